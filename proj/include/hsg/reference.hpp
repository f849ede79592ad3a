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

#ifndef HSG_REFERENCE_HPP
#define HSG_REFERENCE_HPP

#include "hsg/field.hpp"
#include "hsg/presets.hpp"
#include "hsg/solver.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hsg {

/// Entropy solution of the scalar Riemann problem with a Lipschitz flux,
/// written in xhat / t with xhat = x - (xi - 1/2). Throws InvalidArgument for
/// t <= 0.
double exact_scalar(double t, double x, double xi);

enum class ReferenceKind { ExactScalar, Collocation, MonteCarlo };

std::string to_string(ReferenceKind kind);

/// A random field u_ref(x, y, xi) at one fixed time.
class ReferenceField {
 public:
  virtual ~ReferenceField() = default;

  virtual ReferenceKind kind() const = 0;
  virtual int components() const = 0;
  virtual double time() const = 0;
  virtual double value(double x, double y, double xi, int component) const = 0;

  /// Points in (0, 1) where value(x, y, .) may fail to be smooth.
  virtual std::vector<double> xi_breaks(double x, double y) const = 0;
};

class ExactScalarReference final : public ReferenceField {
 public:
  explicit ExactScalarReference(double t);

  ReferenceKind kind() const override { return ReferenceKind::ExactScalar; }
  int components() const override { return 1; }
  double time() const override { return t_; }
  double value(double x, double y, double xi, int component) const override;
  std::vector<double> xi_breaks(double x, double y) const override;

 private:
  double t_;
};

/// Deterministic solves at the midpoints of the stochastic cells of a basis,
/// on the problem grid refined by an integer factor. Piecewise constant in x
/// (fine cells) and in xi (stochastic cells).
class CollocationReference final : public ReferenceField {
 public:
  /// Runs cells() solves, distributed over options.threads workers; each
  /// solve itself is single-threaded.
  CollocationReference(const Problem& problem, int cells, int refinement, double t_final,
                       const SchemeOptions& options = {});

  ReferenceKind kind() const override { return ReferenceKind::Collocation; }
  int components() const override { return components_; }
  double time() const override { return t_; }
  double value(double x, double y, double xi, int component) const override;
  std::vector<double> xi_breaks(double x, double y) const override;

  int cells() const noexcept { return static_cast<int>(runs_.size()); }
  const Grid& grid() const noexcept { return grid_; }
  const GpcField& run(int cell) const { return runs_.at(static_cast<std::size_t>(cell)); }

 private:
  double t_;
  int components_;
  Grid grid_;
  std::vector<GpcField> runs_;
};

/// Deterministic generator of xi-samples in [0, 1): sample i depends only on
/// (seed, i).
double sample_xi(std::uint64_t seed, int index);

/// Values of one mode of one component along the line y = 0, linearly
/// interpolated between the two rows whose centres bracket it. One value per
/// x-cell; for 1D grids the field itself.
std::vector<double> profile_along_y0(const GpcField& field, int component, int mode = 0);

struct MonteCarloEnvelope {
  std::vector<double> x;  // cell centres of the profile
  int components = 0;
  /// Pointwise statistics over samples, indexed [component * x.size() + i].
  std::vector<double> min;
  std::vector<double> max;
  std::vector<double> mean;
  std::vector<double> xi;                     // xi of every successful sample
  std::vector<std::vector<double>> profiles;  // per sample, same layout as min
  int failures = 0;
  std::vector<std::string> failure_messages;
};

/// Runs `samples` deterministic solves with xi drawn by sample_xi and
/// collects min / max / mean of the profile along y = 0. Failed samples are
/// counted and excluded. Aggregation runs in sample order, so results do not
/// depend on options.threads.
MonteCarloEnvelope monte_carlo_reference(const Problem& problem, int samples,
                                         std::uint64_t seed, double t_final,
                                         const SchemeOptions& options = {});

/// Integral over the grid of E[(u(x, xi) - u_ref(x, xi))^2] for one
/// component: midpoint rule in space, 5-point Gauss on every piece of the
/// stochastic cells split at the reference breakpoints.
double mse(const GpcField& field, const GalerkinTensor& tensor, const ReferenceField& reference,
           int component = 0);

/// Same quadrature for E|u - u_ref|.
double l1_distance(const GpcField& field, const GalerkinTensor& tensor,
                   const ReferenceField& reference, int component = 0);

/// Mean and standard deviation per cell and component, stored as single-mode
/// fields.
std::pair<GpcField, GpcField> mean_std(const GpcField& field, const GalerkinTensor& tensor);

}  // namespace hsg

#endif  // HSG_REFERENCE_HPP
