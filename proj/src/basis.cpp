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

#include "hsg/basis.hpp"

#include "hsg/error.hpp"

#include <cmath>
#include <numbers>

namespace hsg {

namespace {

constexpr int kMaxLevel = 12;
constexpr double kOrthoTol = 1e-12;

void require_size(int size) {
  if (size < 2) {
    throw InvalidArgument("basis size must be at least 2, got " +
                          std::to_string(size));
  }
}

}  // namespace

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::ClassicalHaar: return "haar";
    case BasisKind::CanonicalHaar: return "canonical";
    case BasisKind::Dct: return "dct";
    case BasisKind::PiecewiseLinear: return "piecewise-linear";
    case BasisKind::Custom: return "custom";
    case BasisKind::Constant: return "constant";
  }
  return "unknown";
}

Eigen::MatrixXd HaarTypeBasis::normalized() const {
  if (!piecewise_constant()) return matrix_;
  return matrix_ / std::sqrt(static_cast<double>(size()));
}

int HaarTypeBasis::cells() const noexcept {
  return piecewise_constant() ? size() : parameter_;
}

HaarTypeBasis build_classical_haar(int level) {
  if (level < 0 || level > kMaxLevel) {
    throw InvalidArgument("Haar level must lie in [0, 12], got " +
                          std::to_string(level));
  }
  Eigen::MatrixXd h(2, 2);
  h << 1, 1, 1, -1;
  for (int j = 1; j <= level; ++j) {
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    // [H_{j-1} (x) (1,1); I (x) (1,-1)]
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        next(r, 2 * c) = h(r, c);
        next(r, 2 * c + 1) = h(r, c);
      }
      next(n + r, 2 * r) = 1.0;
      next(n + r, 2 * r + 1) = -1.0;
    }
    h = std::move(next);
  }
  // Rows have entries of equal magnitude on their support; rescale so that
  // every row has norm sqrt(K+1), i.e. the 2^(j/2) wavelet scaling.
  const double size = static_cast<double>(h.rows());
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    const double support = static_cast<double>((h.row(r).array() != 0.0).count());
    if (support != size) h.row(r) *= std::sqrt(size / support);
  }
  return HaarTypeBasis(BasisKind::ClassicalHaar, level, std::move(h));
}

HaarTypeBasis build_canonical_haar(
    int size, const std::optional<Eigen::MatrixXd>& orthogonal_block) {
  require_size(size);
  const double n = static_cast<double>(size);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  h.row(0).setOnes();
  for (int i = 1; i < size; ++i) {
    const double s = -(n - i);
    const double hr = std::sqrt(n / (s * s - s));
    h(i, i - 1) = s * hr;
    for (int c = i; c < size; ++c) h(i, c) = hr;
  }
  if (orthogonal_block) {
    const Eigen::MatrixXd& o = *orthogonal_block;
    if (o.rows() != size - 1 || o.cols() != size - 1) {
      throw InvalidArgument("orthogonal block must be (K x K)");
    }
    const Eigen::MatrixXd residual =
        o * o.transpose() - Eigen::MatrixXd::Identity(size - 1, size - 1);
    if (residual.cwiseAbs().maxCoeff() > kOrthoTol) {
      throw InvalidArgument("block supplied for the canonical Haar matrix is not orthogonal");
    }
    h.bottomRows(size - 1) = (o * h.bottomRows(size - 1)).eval();
  }
  return HaarTypeBasis(BasisKind::CanonicalHaar, size, std::move(h));
}

HaarTypeBasis build_dct(int size) {
  require_size(size);
  const double n = static_cast<double>(size);
  Eigen::MatrixXd h(size, size);
  h.row(0).setOnes();
  for (int i = 1; i < size; ++i) {
    for (int j = 1; j <= size; ++j) {
      h(i, j - 1) = std::numbers::sqrt2 *
                    std::cos(std::numbers::pi * i * (2.0 * j - 1.0) / (2.0 * n));
    }
  }
  return HaarTypeBasis(BasisKind::Dct, size, std::move(h));
}

HaarTypeBasis build_piecewise_linear(int subdomains) {
  if (subdomains < 1) {
    throw InvalidArgument("piecewise linear basis needs at least one subdomain");
  }
  // Block eigenvector matrix: the local 2x2 triple-product matrix
  // [[0,1],[1,0]] has eigenvectors (1,1)/sqrt2 and (1,-1)/sqrt2.
  const int size = 2 * subdomains;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  const double r = 1.0 / std::numbers::sqrt2;
  for (int k = 0; k < subdomains; ++k) {
    h(2 * k, 2 * k) = r;
    h(2 * k, 2 * k + 1) = r;
    h(2 * k + 1, 2 * k) = r;
    h(2 * k + 1, 2 * k + 1) = -r;
  }
  return HaarTypeBasis(BasisKind::PiecewiseLinear, subdomains, std::move(h));
}

HaarTypeBasis build_custom(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw InvalidArgument("custom Haar-type matrix must be square");
  }
  require_size(static_cast<int>(matrix.rows()));
  if ((matrix.row(0).array() - 1.0).abs().maxCoeff() > kOrthoTol) {
    throw InvalidArgument("custom Haar-type matrix needs an all-ones first row");
  }
  HaarTypeBasis basis(BasisKind::Custom, static_cast<int>(matrix.rows()), matrix);
  const double residual = orthogonality_residual(basis);
  if (residual > kOrthoTol) {
    throw InvalidArgument("custom Haar-type matrix is not orthogonal (residual " +
                          std::to_string(residual) + ")");
  }
  return basis;
}

HaarTypeBasis build_constant() {
  return HaarTypeBasis(BasisKind::Constant, 1, Eigen::MatrixXd::Ones(1, 1));
}

double evaluate_wavelet(const HaarTypeBasis& basis, int k, double xi) {
  if (k < 0 || k >= basis.size()) {
    throw InvalidArgument("wavelet index out of range");
  }
  if (!(xi >= 0.0 && xi < 1.0)) {
    throw InvalidArgument("wavelet argument must lie in [0,1)");
  }
  if (basis.piecewise_constant()) {
    const int cell = static_cast<int>(std::floor(basis.size() * xi));
    return basis.matrix()(k, std::min(cell, basis.size() - 1));
  }
  // Local Legendre pair on subdomain k/2.
  const int n = basis.parameter();
  const int sub = k / 2;
  const double local = n * xi - sub;
  if (local < 0.0 || local >= 1.0) return 0.0;
  const double scale = std::sqrt(static_cast<double>(n));
  if (k % 2 == 0) return scale;
  return scale * std::sqrt(3.0) * (2.0 * local - 1.0);
}

double orthogonality_residual(const HaarTypeBasis& basis) {
  const Eigen::MatrixXd hn = basis.normalized();
  const Eigen::MatrixXd gram =
      hn * hn.transpose() - Eigen::MatrixXd::Identity(basis.size(), basis.size());
  return gram.cwiseAbs().maxCoeff();
}

}  // namespace hsg
