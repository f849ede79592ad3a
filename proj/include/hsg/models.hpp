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

#ifndef HSG_MODELS_HPP
#define HSG_MODELS_HPP

#include "hsg/galerkin.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hsg {

/// Unit normal (n_x, n_y); 1D models only look at n_x.
using Normal = std::array<double, 2>;

inline Normal axis_normal(int direction) {
  return direction == 0 ? Normal{1.0, 0.0} : Normal{0.0, 1.0};
}

/// Modes of all conserved components of one grid cell, component-major:
/// entry c * (K+1) + k is mode k of component c.
using CellState = Eigen::VectorXd;

struct StateAdmissibility {
  bool admissible;
  double min_value;  // minimum spectral value of the constrained component
  int cell;          // stochastic cell attaining it, -1 if unconstrained
};

/// Stochastic Galerkin system whose flux, speeds and Jacobian are evaluated
/// through the constant eigenvector frame. Concrete models supply the
/// deterministic pointwise law at stochastic cell l; the base class lifts it
/// to modes.
///
/// Spectral arrays use the same component-major layout as CellState.
class Model {
 public:
  explicit Model(std::shared_ptr<const GalerkinTensor> tensor);
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual int components() const = 0;
  virtual int space_dim() const = 0;
  virtual int families() const = 0;

  /// Component whose spectrum has to stay strictly positive, if any.
  virtual std::optional<int> positive_component() const { return std::nullopt; }

  virtual void point_flux(const double* w, int cell, Normal n, double* f) const = 0;
  virtual void point_speeds(const double* w, int cell, Normal n, double* speeds) const = 0;

  /// Bound on |speed| that also covers every selection from the generalized
  /// Jacobian at kinks.
  virtual double point_max_speed(const double* w, int cell, Normal n) const = 0;

  /// point_flux followed by point_max_speed; models may share work between them.
  virtual double point_flux_and_speed(const double* w, int cell, Normal n, double* f) const {
    point_flux(w, cell, n, f);
    return point_max_speed(w, cell, n);
  }

  /// Row-major components() x components() flux Jacobian.
  virtual void point_jacobian(const double* w, int cell, Normal n, double* jac) const = 0;

  const GalerkinTensor& tensor() const noexcept { return *tensor_; }
  const std::shared_ptr<const GalerkinTensor>& shared_tensor() const noexcept {
    return tensor_;
  }
  int modes() const noexcept { return tensor_->size(); }
  int state_size() const noexcept { return components() * modes(); }

  /// Throws AdmissibilityError naming the offending stochastic cell.
  void check_admissible_spectra(const double* w) const;

  void spectral_flux(const double* w, Normal n, double* f) const;
  double spectral_max_speed(const double* w, Normal n) const;

  /// spectral_flux and spectral_max_speed in one pass over the stochastic cells.
  double spectral_flux_and_speed(const double* w, Normal n, double* f) const;

  Eigen::VectorXd to_spectra(const CellState& state) const;
  CellState from_spectra(const Eigen::VectorXd& spectra) const;

  CellState flux(const CellState& state, Normal n) const;

  /// One array of per-cell speeds for every characteristic family.
  std::vector<Eigen::VectorXd> spectrum(const CellState& state, Normal n) const;

  double max_wave_speed(const CellState& state, Normal n) const;

  StateAdmissibility is_admissible_state(const CellState& state) const;

  /// Galerkin flux Jacobian (I (x) V) blockdiag(J(l)) (I (x) V^T), laid out
  /// component-major like CellState.
  Eigen::MatrixXd jacobian(const CellState& state, Normal n) const;

 private:
  std::shared_ptr<const GalerkinTensor> tensor_;
};

/// f(u) = u^2 + |u|.
class ScalarLipschitz final : public Model {
 public:
  using Model::Model;
  std::string name() const override { return "scalar"; }
  int components() const override { return 1; }
  int space_dim() const override { return 1; }
  int families() const override { return 1; }
  void point_flux(const double* w, int cell, Normal n, double* f) const override;
  void point_speeds(const double* w, int cell, Normal n, double* speeds) const override;
  double point_max_speed(const double* w, int cell, Normal n) const override;
  void point_jacobian(const double* w, int cell, Normal n, double* jac) const override;
};

/// Gradient form of the level set equation phi_t + v |grad phi| = 0 with a
/// random, spatially constant normal speed v.
class LevelSet2D final : public Model {
 public:
  LevelSet2D(std::shared_ptr<const GalerkinTensor> tensor, const ModeVector& speed);

  static constexpr double kDegenerateNorm = 1e-12;

  std::string name() const override { return "levelset"; }
  int components() const override { return 2; }
  int space_dim() const override { return 2; }
  int families() const override { return 2; }
  void point_flux(const double* w, int cell, Normal n, double* f) const override;
  void point_speeds(const double* w, int cell, Normal n, double* speeds) const override;
  double point_max_speed(const double* w, int cell, Normal n) const override;
  void point_jacobian(const double* w, int cell, Normal n, double* jac) const override;

  const ModeVector& speed_modes() const noexcept { return speed_; }

 private:
  ModeVector speed_;
  SpectrumVector speed_spectrum_;
};

/// p-system u_t + p(v)_x = 0, v_t - u_x = 0 with the pressure law
/// v^-g1 below the switching volume v* and v^-g2 + delta above it.
class PSystem1D final : public Model {
 public:
  struct Parameters {
    double gamma1;
    double gamma2;
    ModeVector switch_volume;  // v*
    ModeVector jump;           // delta = v*^-g1 - v*^-g2
  };

  PSystem1D(std::shared_ptr<const GalerkinTensor> tensor, Parameters params);

  std::string name() const override { return "psystem"; }
  int components() const override { return 2; }
  int space_dim() const override { return 1; }
  int families() const override { return 2; }
  std::optional<int> positive_component() const override { return 1; }
  void point_flux(const double* w, int cell, Normal n, double* f) const override;
  void point_speeds(const double* w, int cell, Normal n, double* speeds) const override;
  double point_max_speed(const double* w, int cell, Normal n) const override;
  void point_jacobian(const double* w, int cell, Normal n, double* jac) const override;

  /// Deterministic pressure and its derivative for one stochastic cell.
  double pressure(double v, int cell) const;
  double pressure_slope(double v, int cell) const;

  const Parameters& parameters() const noexcept { return params_; }

 private:
  Parameters params_;
  SpectrumVector switch_spectrum_;
  SpectrumVector jump_spectrum_;
};

/// Isentropic Euler equations with p(rho) = rho^gamma.
class Euler2D final : public Model {
 public:
  Euler2D(std::shared_ptr<const GalerkinTensor> tensor, double gamma);

  std::string name() const override { return "euler"; }
  int components() const override { return 3; }
  int space_dim() const override { return 2; }
  int families() const override { return 3; }
  std::optional<int> positive_component() const override { return 0; }
  void point_flux(const double* w, int cell, Normal n, double* f) const override;
  void point_speeds(const double* w, int cell, Normal n, double* speeds) const override;
  double point_max_speed(const double* w, int cell, Normal n) const override;
  double point_flux_and_speed(const double* w, int cell, Normal n, double* f) const override;
  void point_jacobian(const double* w, int cell, Normal n, double* jac) const override;

  double gamma() const noexcept { return gamma_; }

 private:
  double gamma_;
};

/// u_t + a . grad u = 0; used for convergence studies of the scheme.
class LinearAdvection final : public Model {
 public:
  LinearAdvection(std::shared_ptr<const GalerkinTensor> tensor, int space_dim,
                  Normal velocity);

  std::string name() const override { return "advection"; }
  int components() const override { return 1; }
  int space_dim() const override { return dim_; }
  int families() const override { return 1; }
  void point_flux(const double* w, int cell, Normal n, double* f) const override;
  void point_speeds(const double* w, int cell, Normal n, double* speeds) const override;
  double point_max_speed(const double* w, int cell, Normal n) const override;
  void point_jacobian(const double* w, int cell, Normal n, double* jac) const override;

 private:
  int dim_;
  Normal velocity_;
};

}  // namespace hsg

#endif  // HSG_MODELS_HPP
