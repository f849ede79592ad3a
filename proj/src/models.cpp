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

#include "hsg/models.hpp"

#include "hsg/error.hpp"

#include <algorithm>
#include <cmath>

namespace hsg {

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

constexpr int kMaxComponents = 3;

}  // namespace

Model::Model(std::shared_ptr<const GalerkinTensor> tensor) : tensor_(std::move(tensor)) {
  if (!tensor_) throw InvalidArgument("model needs a Galerkin tensor");
}

void Model::check_admissible_spectra(const double* w) const {
  const auto c = positive_component();
  if (!c) return;
  const int n = modes();
  const double* values = w + *c * n;
  for (int l = 0; l < n; ++l) {
    if (!(values[l] > 0.0)) {
      throw AdmissibilityError(name() + ": component " + std::to_string(*c) +
                                   " has non-positive spectral value " +
                                   std::to_string(values[l]) + " in stochastic cell " +
                                   std::to_string(l),
                               l);
    }
  }
}

void Model::spectral_flux(const double* w, Normal n, double* f) const {
  check_admissible_spectra(w);
  const int m = components();
  const int size = modes();
  double point[kMaxComponents];
  double out[kMaxComponents];
  for (int l = 0; l < size; ++l) {
    for (int c = 0; c < m; ++c) point[c] = w[c * size + l];
    point_flux(point, l, n, out);
    for (int c = 0; c < m; ++c) f[c * size + l] = out[c];
  }
}

double Model::spectral_max_speed(const double* w, Normal n) const {
  check_admissible_spectra(w);
  const int m = components();
  const int size = modes();
  double point[kMaxComponents];
  double speed = 0.0;
  for (int l = 0; l < size; ++l) {
    for (int c = 0; c < m; ++c) point[c] = w[c * size + l];
    speed = std::max(speed, point_max_speed(point, l, n));
  }
  return speed;
}

double Model::spectral_flux_and_speed(const double* w, Normal n, double* f) const {
  check_admissible_spectra(w);
  const int m = components();
  const int size = modes();
  double point[kMaxComponents];
  double out[kMaxComponents];
  double speed = 0.0;
  for (int l = 0; l < size; ++l) {
    for (int c = 0; c < m; ++c) point[c] = w[c * size + l];
    speed = std::max(speed, point_flux_and_speed(point, l, n, out));
    for (int c = 0; c < m; ++c) f[c * size + l] = out[c];
  }
  return speed;
}

Eigen::VectorXd Model::to_spectra(const CellState& state) const {
  if (state.size() != state_size()) throw InvalidArgument("cell state has wrong length");
  const int size = modes();
  Eigen::VectorXd out(state.size());
  for (int c = 0; c < components(); ++c) {
    out.segment(c * size, size) = tensor_->to_spectrum(state.segment(c * size, size));
  }
  return out;
}

CellState Model::from_spectra(const Eigen::VectorXd& spectra) const {
  if (spectra.size() != state_size()) throw InvalidArgument("spectra have wrong length");
  const int size = modes();
  CellState out(spectra.size());
  for (int c = 0; c < components(); ++c) {
    out.segment(c * size, size) = tensor_->from_spectrum(spectra.segment(c * size, size));
  }
  return out;
}

CellState Model::flux(const CellState& state, Normal n) const {
  const Eigen::VectorXd w = to_spectra(state);
  Eigen::VectorXd f(w.size());
  spectral_flux(w.data(), n, f.data());
  return from_spectra(f);
}

std::vector<Eigen::VectorXd> Model::spectrum(const CellState& state, Normal n) const {
  const Eigen::VectorXd w = to_spectra(state);
  check_admissible_spectra(w.data());
  const int size = modes();
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(families()),
                                   Eigen::VectorXd(size));
  double point[kMaxComponents];
  double speeds[kMaxComponents];
  for (int l = 0; l < size; ++l) {
    for (int c = 0; c < components(); ++c) point[c] = w[c * size + l];
    point_speeds(point, l, n, speeds);
    for (int fam = 0; fam < families(); ++fam) out[static_cast<std::size_t>(fam)][l] = speeds[fam];
  }
  return out;
}

double Model::max_wave_speed(const CellState& state, Normal n) const {
  const Eigen::VectorXd w = to_spectra(state);
  return spectral_max_speed(w.data(), n);
}

StateAdmissibility Model::is_admissible_state(const CellState& state) const {
  const auto c = positive_component();
  if (!c) return {true, 0.0, -1};
  const int size = modes();
  const SpectrumVector d = tensor_->to_spectrum(state.segment(*c * size, size));
  Eigen::Index cell = 0;
  const double min = d.minCoeff(&cell);
  return {min > 0.0, min, static_cast<int>(cell)};
}

Eigen::MatrixXd Model::jacobian(const CellState& state, Normal n) const {
  const Eigen::VectorXd w = to_spectra(state);
  check_admissible_spectra(w.data());
  const int m = components();
  const int size = modes();
  // blocks[a][b] holds the per-cell entries J_ab(l).
  std::vector<Eigen::VectorXd> blocks(static_cast<std::size_t>(m * m), Eigen::VectorXd(size));
  double point[kMaxComponents];
  double jac[kMaxComponents * kMaxComponents];
  for (int l = 0; l < size; ++l) {
    for (int c = 0; c < m; ++c) point[c] = w[c * size + l];
    point_jacobian(point, l, n, jac);
    for (int ab = 0; ab < m * m; ++ab) blocks[static_cast<std::size_t>(ab)][l] = jac[ab];
  }
  Eigen::MatrixXd out(m * size, m * size);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      out.block(a * size, b * size, size, size) =
          tensor_->spectral_operator(blocks[static_cast<std::size_t>(a * m + b)]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

void ScalarLipschitz::point_flux(const double* w, int, Normal n, double* f) const {
  f[0] = n[0] * (w[0] * w[0] + std::abs(w[0]));
}

void ScalarLipschitz::point_speeds(const double* w, int, Normal n, double* speeds) const {
  speeds[0] = n[0] * (2.0 * w[0] + sign_of(w[0]));
}

double ScalarLipschitz::point_max_speed(const double* w, int, Normal n) const {
  // max(|2u - 1|, |2u + 1|): both subdifferential endpoints at u = 0.
  return std::abs(n[0]) * (2.0 * std::abs(w[0]) + 1.0);
}

void ScalarLipschitz::point_jacobian(const double* w, int, Normal n, double* jac) const {
  jac[0] = n[0] * (2.0 * w[0] + sign_of(w[0]));
}

// ---------------------------------------------------------------------------

LevelSet2D::LevelSet2D(std::shared_ptr<const GalerkinTensor> tensor, const ModeVector& speed)
    : Model(std::move(tensor)), speed_(speed) {
  if (speed_.size() != modes()) throw InvalidArgument("level set speed has wrong length");
  speed_spectrum_ = this->tensor().to_spectrum(speed_);
}

void LevelSet2D::point_flux(const double* w, int cell, Normal n, double* f) const {
  const double flux = speed_spectrum_[cell] * std::hypot(w[0], w[1]);
  f[0] = n[0] * flux;
  f[1] = n[1] * flux;
}

void LevelSet2D::point_speeds(const double* w, int cell, Normal n, double* speeds) const {
  const double v = speed_spectrum_[cell];
  const double norm = std::hypot(w[0], w[1]);
  if (norm < kDegenerateNorm) {
    speeds[0] = v * (n[0] * sign_of(w[0]) + n[1] * sign_of(w[1]));
  } else {
    speeds[0] = v * (n[0] * w[0] + n[1] * w[1]) / norm;
  }
  speeds[1] = 0.0;
}

double LevelSet2D::point_max_speed(const double* w, int cell, Normal n) const {
  const double v = std::abs(speed_spectrum_[cell]);
  const double norm = std::hypot(w[0], w[1]);
  if (norm < kDegenerateNorm) return v;
  return v * std::abs(n[0] * w[0] + n[1] * w[1]) / norm;
}

void LevelSet2D::point_jacobian(const double* w, int cell, Normal n, double* jac) const {
  const double v = speed_spectrum_[cell];
  const double norm = std::hypot(w[0], w[1]);
  double g0 = 0.0;
  double g1 = 0.0;
  if (norm < kDegenerateNorm) {
    g0 = v * sign_of(w[0]);
    g1 = v * sign_of(w[1]);
  } else {
    g0 = v * w[0] / norm;
    g1 = v * w[1] / norm;
  }
  jac[0] = n[0] * g0;
  jac[1] = n[0] * g1;
  jac[2] = n[1] * g0;
  jac[3] = n[1] * g1;
}

// ---------------------------------------------------------------------------

PSystem1D::PSystem1D(std::shared_ptr<const GalerkinTensor> tensor, Parameters params)
    : Model(std::move(tensor)), params_(std::move(params)) {
  if (params_.switch_volume.size() != modes() || params_.jump.size() != modes()) {
    throw InvalidArgument("p-system parameter modes have wrong length");
  }
  if (!(params_.gamma1 > 0.0 && params_.gamma2 > 0.0)) {
    throw InvalidArgument("p-system exponents must be positive");
  }
  switch_spectrum_ = this->tensor().to_spectrum(params_.switch_volume);
  jump_spectrum_ = this->tensor().to_spectrum(params_.jump);
}

double PSystem1D::pressure(double v, int cell) const {
  const double s = sign_of(v - switch_spectrum_[cell]);
  return -0.5 * (s - 1.0) * std::pow(v, -params_.gamma1) +
         0.5 * (s + 1.0) * (std::pow(v, -params_.gamma2) + jump_spectrum_[cell]);
}

double PSystem1D::pressure_slope(double v, int cell) const {
  const double s = sign_of(v - switch_spectrum_[cell]);
  const double low = -params_.gamma1 * std::pow(v, -params_.gamma1 - 1.0);
  const double high = -params_.gamma2 * std::pow(v, -params_.gamma2 - 1.0);
  return -0.5 * (s - 1.0) * low + 0.5 * (s + 1.0) * high;
}

void PSystem1D::point_flux(const double* w, int cell, Normal n, double* f) const {
  f[0] = n[0] * pressure(w[1], cell);
  f[1] = -n[0] * w[0];
}

void PSystem1D::point_speeds(const double* w, int cell, Normal n, double* speeds) const {
  const double c = std::sqrt(-pressure_slope(w[1], cell));
  speeds[0] = -std::abs(n[0]) * c;
  speeds[1] = std::abs(n[0]) * c;
}

double PSystem1D::point_max_speed(const double* w, int cell, Normal n) const {
  const double v = w[1];
  if (v == switch_spectrum_[cell]) {
    const double low = params_.gamma1 * std::pow(v, -params_.gamma1 - 1.0);
    const double high = params_.gamma2 * std::pow(v, -params_.gamma2 - 1.0);
    return std::abs(n[0]) * std::sqrt(std::max(low, high));
  }
  return std::abs(n[0]) * std::sqrt(-pressure_slope(v, cell));
}

void PSystem1D::point_jacobian(const double* w, int cell, Normal n, double* jac) const {
  jac[0] = 0.0;
  jac[1] = n[0] * pressure_slope(w[1], cell);
  jac[2] = -n[0];
  jac[3] = 0.0;
}

// ---------------------------------------------------------------------------

Euler2D::Euler2D(std::shared_ptr<const GalerkinTensor> tensor, double gamma)
    : Model(std::move(tensor)), gamma_(gamma) {
  if (!(gamma > 1.0)) throw InvalidArgument("Euler adiabatic exponent must exceed 1");
}

void Euler2D::point_flux(const double* w, int, Normal n, double* f) const {
  const double rho = w[0];
  const double un = (n[0] * w[1] + n[1] * w[2]) / rho;
  const double p = std::pow(rho, gamma_);
  f[0] = rho * un;
  f[1] = w[1] * un + n[0] * p;
  f[2] = w[2] * un + n[1] * p;
}

void Euler2D::point_speeds(const double* w, int, Normal n, double* speeds) const {
  const double rho = w[0];
  const double un = (n[0] * w[1] + n[1] * w[2]) / rho;
  const double c = std::sqrt(gamma_ * std::pow(rho, gamma_ - 1.0));
  speeds[0] = un - c;
  speeds[1] = un;
  speeds[2] = un + c;
}

double Euler2D::point_max_speed(const double* w, int, Normal n) const {
  const double rho = w[0];
  const double un = (n[0] * w[1] + n[1] * w[2]) / rho;
  return std::abs(un) + std::sqrt(gamma_ * std::pow(rho, gamma_ - 1.0));
}

double Euler2D::point_flux_and_speed(const double* w, int, Normal n, double* f) const {
  const double rho = w[0];
  const double un = (n[0] * w[1] + n[1] * w[2]) / rho;
  const double p = std::pow(rho, gamma_);
  f[0] = rho * un;
  f[1] = w[1] * un + n[0] * p;
  f[2] = w[2] * un + n[1] * p;
  return std::abs(un) + std::sqrt(gamma_ * p / rho);
}

void Euler2D::point_jacobian(const double* w, int, Normal n, double* jac) const {
  const double rho = w[0];
  const double v1 = w[1] / rho;
  const double v2 = w[2] / rho;
  const double un = n[0] * v1 + n[1] * v2;
  const double c2 = gamma_ * std::pow(rho, gamma_ - 1.0);
  jac[0] = 0.0;
  jac[1] = n[0];
  jac[2] = n[1];
  jac[3] = -v1 * un + n[0] * c2;
  jac[4] = un + n[0] * v1;
  jac[5] = n[1] * v1;
  jac[6] = -v2 * un + n[1] * c2;
  jac[7] = n[0] * v2;
  jac[8] = un + n[1] * v2;
}

// ---------------------------------------------------------------------------

LinearAdvection::LinearAdvection(std::shared_ptr<const GalerkinTensor> tensor,
                                 int space_dim, Normal velocity)
    : Model(std::move(tensor)), dim_(space_dim), velocity_(velocity) {
  if (dim_ != 1 && dim_ != 2) throw InvalidArgument("advection dimension must be 1 or 2");
  if (dim_ == 1) velocity_[1] = 0.0;
}

void LinearAdvection::point_flux(const double* w, int, Normal n, double* f) const {
  f[0] = (n[0] * velocity_[0] + n[1] * velocity_[1]) * w[0];
}

void LinearAdvection::point_speeds(const double*, int, Normal n, double* speeds) const {
  speeds[0] = n[0] * velocity_[0] + n[1] * velocity_[1];
}

double LinearAdvection::point_max_speed(const double*, int, Normal n) const {
  return std::abs(n[0] * velocity_[0] + n[1] * velocity_[1]);
}

void LinearAdvection::point_jacobian(const double*, int, Normal n, double* jac) const {
  jac[0] = n[0] * velocity_[0] + n[1] * velocity_[1];
}

}  // namespace hsg
