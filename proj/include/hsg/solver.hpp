/*
Copyright 2026 The hsg Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef HSG_SOLVER_HPP
#define HSG_SOLVER_HPP

#include "hsg/field.hpp"
#include "hsg/models.hpp"
#include "hsg/reconstruction.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace hsg {

struct SchemeOptions {
  double cfl = 0.45;
  CwenoParameters cweno;
  int threads = 1;
};

/// Source term evaluated at one quadrature point: writes components x modes
/// values for the state modes given at (x, y, t).
using SourceTerm =
    std::function<void(double x, double y, double t, const double* state, double* out)>;

/// Local Lax-Friedrichs flux on modes; alpha is the larger of the two maximal
/// wave speeds.
CellState llf_flux(const Model& model, const CellState& left, const CellState& right,
                   Normal n);

/// Cell averages of a source term: 2-point Gauss in 1D, 2x2 Gauss in 2D,
/// applied to the CWENO reconstruction of the field.
GpcField source_quadrature(const SourceTerm& source, const GpcField& field, double t,
                           const CwenoParameters& params = {});

/// Method-of-lines right-hand side: ghost fill, CWENO reconstruction of every
/// mode, LLF fluxes (2-point Gauss per face in 2D) and conservative
/// differences. Holds scratch buffers; not safe to share between threads.
class SemiDiscrete {
 public:
  SemiDiscrete(const Model& model, const Grid& grid, SchemeOptions options,
               SourceTerm source = {});

  void evaluate(const GpcField& u, double t, GpcField& rhs);

 private:
  void evaluate_1d(GpcField& rhs);
  void evaluate_2d(GpcField& rhs);
  void add_source(const GpcField& u, double t, GpcField& rhs) const;

  const Model& model_;
  Grid grid_;
  SchemeOptions options_;
  SourceTerm source_;
  int stride_;
  std::vector<double> padded_;
  std::vector<double> faces_;    // reconstructed face-point values
  std::vector<double> flux_x_;   // spectral face fluxes
  std::vector<double> flux_y_;
};

using RhsFunction = std::function<void(const GpcField& u, double t, GpcField& out)>;

/// One step of the three-stage third-order SSP Runge-Kutta method. Failures
/// inside a stage are rethrown as SolverError naming the stage.
GpcField ssprk3_step(const RhsFunction& rhs, const GpcField& u, double dt);

/// cfl * min dx / s in 1D and cfl * min 1 / (s_x/dx + s_y/dy) in 2D over cell
/// averages, clipped so that t + dt does not pass t_final.
double compute_dt(const Model& model, const GpcField& field, double cfl, double t,
                  double t_final, int threads = 1);

struct AdvanceStats {
  int steps = 0;
  /// Minimum over the run of the constrained component's spectrum in cell
  /// averages; +inf for unconstrained models.
  double min_admissible = std::numeric_limits<double>::infinity();
};

using StepCallback = std::function<void(const GpcField& field, int step)>;

/// Integrates from field.time() to t_final. The callback runs after every
/// accepted step. Throws SolverError if admissibility is lost.
AdvanceStats advance(const Model& model, GpcField& field, double t_final,
                     const SchemeOptions& options, const StepCallback& callback = {},
                     const SourceTerm& source = {});

}  // namespace hsg

#endif  // HSG_SOLVER_HPP
