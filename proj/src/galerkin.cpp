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

#include "hsg/galerkin.hpp"

#include "hsg/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace hsg {

namespace {

constexpr double kCommuteTol = 1e-10;
constexpr int kPanelsPerCell = 8;

// 5-point Gauss-Legendre on [-1,1].
constexpr std::array<double, 5> kGaussNodes = {
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269};
constexpr std::array<double, 5> kGaussWeights = {
    0.2369268850561890875142640, 0.4786286704993664680412915,
    0.5688888888888888888888889, 0.4786286704993664680412915,
    0.2369268850561890875142640};

template <class F>
double integrate_piece(double a, double b, const F& integrand) {
  const double h = (b - a) / kPanelsPerCell;
  double sum = 0.0;
  for (int p = 0; p < kPanelsPerCell; ++p) {
    const double mid = a + (p + 0.5) * h;
    double panel = 0.0;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      panel += kGaussWeights[q] * integrand(mid + 0.5 * h * kGaussNodes[q]);
    }
    sum += 0.5 * h * panel;
  }
  return sum;
}

// Integral over [a,b], split at the breakpoints that fall strictly inside.
template <class F>
double integrate_cell(double a, double b, std::span<const double> sorted_breaks,
                      const F& integrand) {
  double left = a;
  double total = 0.0;
  for (double x : sorted_breaks) {
    if (x <= left || x >= b) continue;
    total += integrate_piece(left, x, integrand);
    left = x;
  }
  return total + integrate_piece(left, b, integrand);
}

double checked(double value) {
  if (!std::isfinite(value)) {
    throw InvalidArgument("projected function returned a non-finite value");
  }
  return value;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

[[noreturn]] void throw_negative(const char* what, const SpectrumVector& d,
                                 Eigen::Index cell) {
  throw AdmissibilityError(std::string(what) + ": spectral value " +
                               std::to_string(d[cell]) + " in stochastic cell " +
                               std::to_string(cell),
                           static_cast<int>(cell));
}

// Returns a copy with tiny negative rounding noise set to zero; throws if an
// entry is genuinely negative (or non-positive when strict).
SpectrumVector require_nonnegative(const SpectrumVector& d, bool strict,
                                   const char* what) {
  SpectrumVector out = d;
  for (Eigen::Index l = 0; l < d.size(); ++l) {
    if (strict ? !(d[l] > 0.0) : !(d[l] >= -kSemiPositiveTolerance)) {
      throw_negative(what, d, l);
    }
    out[l] = std::max(d[l], 0.0);
  }
  return out;
}

}  // namespace

struct GalerkinTensor::TripleCache {
  std::once_flag once;
  std::vector<SparseMatrix> triples;
};

GalerkinTensor::GalerkinTensor(HaarTypeBasis basis)
    : basis_(std::move(basis)), cache_(std::make_shared<TripleCache>()) {
  const int n = basis_.size();
  frame_ = basis_.normalized();
  if (basis_.piecewise_constant()) {
    eigen_table_ = basis_.matrix();
    synthesis_ = basis_.matrix() / static_cast<double>(n);
    unit_ = ModeVector::Unit(n, 0);
  } else {
    const int subdomains = basis_.parameter();
    const double scale = std::sqrt(static_cast<double>(subdomains));
    unit_ = ModeVector::Zero(n);
    for (int k = 0; k < subdomains; ++k) unit_[2 * k] = 1.0 / scale;
    eigen_table_.resize(n, n);
    for (int k = 0; k < n; ++k) {
      const SparseMatrix& m = triple(k);
      for (int l = 0; l < n; ++l) {
        eigen_table_(k, l) = frame_.col(l).dot(m * frame_.col(l));
      }
    }
    synthesis_ = frame_ * (frame_.transpose() * unit_).asDiagonal();
  }
  if (basis_.kind() == BasisKind::Custom) {
    const CommutationReport report = check_commuting(*this);
    if (!report.commuting) {
      throw InvalidArgument("custom basis yields non-commuting Galerkin matrices (worst " +
                            std::to_string(report.worst) + ")");
    }
  }
}

const std::vector<SparseMatrix>& GalerkinTensor::triples() const {
  std::call_once(cache_->once, [this] {
    const int n = size();
    std::vector<SparseMatrix>& out = cache_->triples;
    out.reserve(n);
    if (basis_.piecewise_constant()) {
      const SparseMatrix h = basis_.matrix().sparseView(1.0, 1e-15);
      const SparseMatrix ht = h.transpose();
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd row = basis_.matrix().row(k).transpose() / n;
        const SparseMatrix raw = h * row.asDiagonal() * ht;
        const SparseMatrix raw_t = raw.transpose();
        SparseMatrix m = 0.5 * (raw + raw_t);
        m.prune(1.0, 1e-13);
        out.push_back(std::move(m));
      }
    } else {
      // Exact cubic integrals of the local pair on one subdomain:
      // <a a a> = <a b b> = sqrt(N), <a a b> = <b b b> = 0.
      const double s = std::sqrt(static_cast<double>(basis_.parameter()));
      for (int k = 0; k < n; ++k) {
        const int b = 2 * (k / 2);
        std::vector<Eigen::Triplet<double>> entries;
        if (k % 2 == 0) {
          entries = {{b, b, s}, {b + 1, b + 1, s}};
        } else {
          entries = {{b, b + 1, s}, {b + 1, b, s}};
        }
        SparseMatrix m(n, n);
        m.setFromTriplets(entries.begin(), entries.end());
        out.push_back(std::move(m));
      }
    }
  });
  return cache_->triples;
}

const SparseMatrix& GalerkinTensor::triple(int k) const {
  if (k < 0 || k >= size()) throw InvalidArgument("triple index out of range");
  return triples()[static_cast<std::size_t>(k)];
}

SpectrumVector GalerkinTensor::to_spectrum(const ModeVector& u) const {
  if (u.size() != size()) throw InvalidArgument("mode vector has wrong length");
  return eigen_table_.transpose() * u;
}

ModeVector GalerkinTensor::from_spectrum(const SpectrumVector& d) const {
  if (d.size() != size()) throw InvalidArgument("spectrum has wrong length");
  return synthesis_ * d;
}

Eigen::MatrixXd GalerkinTensor::spectral_operator(const Eigen::VectorXd& values) const {
  return synthesis_ * values.asDiagonal() * eigen_table_.transpose();
}

Eigen::MatrixXd GalerkinTensor::galerkin_matrix(const ModeVector& u) const {
  if (u.size() != size()) throw InvalidArgument("mode vector has wrong length");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size(), size());
  const auto& m = triples();
  for (int k = 0; k < size(); ++k) {
    if (u[k] != 0.0) p += u[k] * Eigen::MatrixXd(m[static_cast<std::size_t>(k)]);
  }
  return p;
}

ModeVector GalerkinTensor::product(const ModeVector& u, const ModeVector& q) const {
  return from_spectrum(to_spectrum(u).cwiseProduct(to_spectrum(q)));
}

ModeVector GalerkinTensor::project(const std::function<double(double)>& f,
                                   std::span<const double> breakpoints) const {
  std::vector<double> breaks(breakpoints.begin(), breakpoints.end());
  std::sort(breaks.begin(), breaks.end());
  const int cells = basis_.cells();
  const double width = 1.0 / cells;
  if (basis_.piecewise_constant()) {
    Eigen::VectorXd averages(cells);
    for (int c = 0; c < cells; ++c) {
      averages[c] = integrate_cell(c * width, (c + 1) * width, breaks,
                                   [&](double xi) { return checked(f(xi)); }) /
                    width;
    }
    return from_spectrum(averages);
  }
  ModeVector modes(size());
  for (int c = 0; c < cells; ++c) {
    for (int i = 0; i < 2; ++i) {
      const int k = 2 * c + i;
      const double lo = c * width;
      modes[k] = integrate_cell(lo, (c + 1) * width, breaks, [&](double xi) {
        return checked(f(xi)) * evaluate_wavelet(basis_, k, std::min(xi, std::nextafter(1.0, 0.0)));
      });
    }
  }
  return modes;
}

double GalerkinTensor::evaluate(const ModeVector& u, double xi) const {
  if (u.size() != size()) throw InvalidArgument("mode vector has wrong length");
  double sum = 0.0;
  for (int k = 0; k < size(); ++k) {
    if (u[k] != 0.0) sum += u[k] * evaluate_wavelet(basis_, k, xi);
  }
  return sum;
}

CommutationReport check_commuting(const std::vector<SparseMatrix>& matrices) {
  CommutationReport report{true, 0.0, -1, -1};
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      const SparseMatrix ab = matrices[i] * matrices[j];
      const SparseMatrix ba = matrices[j] * matrices[i];
      const SparseMatrix diff = ab - ba;
      double worst = 0.0;
      for (int o = 0; o < diff.outerSize(); ++o) {
        for (SparseMatrix::InnerIterator it(diff, o); it; ++it) {
          worst = std::max(worst, std::abs(it.value()));
        }
      }
      if (report.first < 0 || worst > report.worst) {
        report = {true, worst, static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  report.commuting = report.worst < kCommuteTol;
  return report;
}

CommutationReport check_commuting(const GalerkinTensor& tensor) {
  return check_commuting(tensor.triples());
}

AdmissibilityReport is_admissible(const GalerkinTensor& t, const ModeVector& u) {
  const SpectrumVector d = t.to_spectrum(u);
  Eigen::Index cell = 0;
  const double min = d.minCoeff(&cell);
  Positivity positivity = Positivity::Indefinite;
  if (min > 0.0) {
    positivity = Positivity::StrictlyPositive;
  } else if (min >= -kSemiPositiveTolerance) {
    positivity = Positivity::SemiPositive;
  }
  return {positivity, min, static_cast<int>(cell)};
}

ModeVector power_modes(const GalerkinTensor& t, const ModeVector& u, double gamma) {
  const SpectrumVector d =
      require_nonnegative(t.to_spectrum(u), gamma <= 0.0, "power of a non-positive expansion");
  return t.from_spectrum(d.array().pow(gamma).matrix());
}

Eigen::MatrixXd jacobian_power(const GalerkinTensor& t, const ModeVector& u,
                               double gamma) {
  const SpectrumVector d = require_nonnegative(
      t.to_spectrum(u), gamma < 1.0, "power Jacobian at a non-positive expansion");
  Eigen::VectorXd slope(d.size());
  for (Eigen::Index l = 0; l < d.size(); ++l) {
    slope[l] = gamma == 1.0 ? 1.0 : gamma * std::pow(d[l], gamma - 1.0);
  }
  return t.spectral_operator(slope);
}

ModeVector sign_modes(const GalerkinTensor& t, const ModeVector& u) {
  return t.from_spectrum(t.to_spectrum(u).unaryExpr(&sign_of));
}

ModeVector abs_modes(const GalerkinTensor& t, const ModeVector& u) {
  return t.from_spectrum(t.to_spectrum(u).cwiseAbs());
}

Eigen::MatrixXd jacobian_abs(const GalerkinTensor& t, const ModeVector& u) {
  return t.spectral_operator(t.to_spectrum(u).unaryExpr(&sign_of));
}

namespace {

std::vector<SpectrumVector> spectra_of(const GalerkinTensor& t,
                                       std::span<const ModeVector> u, double p) {
  if (u.empty()) throw InvalidArgument("p-norm needs at least one component");
  if (!(p >= 1.0)) throw InvalidArgument("p-norm exponent must be at least 1");
  std::vector<SpectrumVector> out;
  out.reserve(u.size());
  for (const ModeVector& c : u) out.push_back(t.to_spectrum(c));
  return out;
}

double entry_norm(const std::vector<SpectrumVector>& d, Eigen::Index l, double p) {
  if (p == 2.0) {
    double sum = 0.0;
    for (const auto& c : d) sum += c[l] * c[l];
    return std::sqrt(sum);
  }
  double sum = 0.0;
  for (const auto& c : d) sum += std::pow(std::abs(c[l]), p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace

ModeVector pnorm_modes(const GalerkinTensor& t, std::span<const ModeVector> u,
                       double p) {
  const auto d = spectra_of(t, u, p);
  SpectrumVector norm(t.size());
  for (Eigen::Index l = 0; l < norm.size(); ++l) norm[l] = entry_norm(d, l, p);
  return t.from_spectrum(norm);
}

Eigen::MatrixXd jacobian_pnorm(const GalerkinTensor& t,
                               std::span<const ModeVector> u, double p, int i) {
  const auto d = spectra_of(t, u, p);
  if (i < 0 || i >= static_cast<int>(d.size())) {
    throw InvalidArgument("p-norm component index out of range");
  }
  const SpectrumVector& di = d[static_cast<std::size_t>(i)];
  Eigen::VectorXd slope(t.size());
  for (Eigen::Index l = 0; l < slope.size(); ++l) {
    const double norm = entry_norm(d, l, p);
    if (norm == 0.0) {
      slope[l] = 0.0;
      continue;
    }
    // c^{1/p - 1} |d_i|^{p-1} sign(d_i) with c = norm^p.
    slope[l] = std::pow(norm, 1.0 - p) * std::pow(std::abs(di[l]), p - 1.0) *
               sign_of(di[l]);
  }
  return t.spectral_operator(slope);
}

ModeVector nth_root_modes(const GalerkinTensor& t, const ModeVector& rho, int n) {
  if (n < 2) throw InvalidArgument("root order must be at least 2");
  const SpectrumVector d =
      require_nonnegative(t.to_spectrum(rho), false, "root of a negative expansion");
  SpectrumVector r(d.size());
  for (Eigen::Index l = 0; l < d.size(); ++l) {
    r[l] = n == 2 ? std::sqrt(d[l]) : (n == 3 ? std::cbrt(d[l]) : std::pow(d[l], 1.0 / n));
  }
  return t.from_spectrum(r);
}

ModeVector moment_modes(const GalerkinTensor& t, const ModeVector& u, int m) {
  if (m < 1) throw InvalidArgument("moment order must be at least 1");
  const Eigen::MatrixXd p = t.galerkin_matrix(u);
  ModeVector v = t.unit();
  for (int i = 0; i < m; ++i) v = p * v;
  return v;
}

ObjectiveValue convex_root_objective(const GalerkinTensor& t, const ModeVector& rho,
                                     const ModeVector& alpha, int n) {
  if (n < 1) throw InvalidArgument("root order must be positive");
  if (rho.size() != t.size()) throw InvalidArgument("mode vector has wrong length");
  const Eigen::MatrixXd p = t.galerkin_matrix(alpha);
  ModeVector power = t.unit();
  for (int i = 0; i < n; ++i) power = p * power;
  const double value = power.dot(p * t.unit()) / (n + 1) - rho.dot(alpha);
  return {value, power - rho};
}

double eigen_derivative_check(const GalerkinTensor& t, const ModeVector& u,
                              const ModeVector& q) {
  constexpr double step = 1e-6;
  const int n = t.size();
  const Eigen::MatrixXd& v = t.frame();
  auto spectrum = [&](const ModeVector& a) -> Eigen::VectorXd {
    return (v.transpose() * t.galerkin_matrix(a) * v).diagonal();
  };
  Eigen::MatrixXd jac(n, n);
  for (int k = 0; k < n; ++k) {
    ModeVector plus = u;
    ModeVector minus = u;
    plus[k] += step;
    minus[k] -= step;
    jac.col(k) = (spectrum(plus) - spectrum(minus)) / (2.0 * step);
  }
  const Eigen::MatrixXd lhs = (v.transpose() * q).asDiagonal() * jac;
  const Eigen::MatrixXd rhs = v.transpose() * t.galerkin_matrix(q);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace hsg
