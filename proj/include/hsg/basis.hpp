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

#ifndef HSG_BASIS_HPP
#define HSG_BASIS_HPP

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace hsg {

enum class BasisKind {
  ClassicalHaar,
  CanonicalHaar,
  Dct,
  PiecewiseLinear,
  Custom,
  /// Single constant function; used for deterministic (per-sample) solves.
  Constant,
};

std::string to_string(BasisKind kind);

/// A Haar-type matrix together with the wavelet system it generates on the
/// uniform law over [0,1).
///
/// For the piecewise-constant kinds row k of matrix() holds the values of the
/// k-th wavelet on the K+1 equal stochastic cells; rows have Euclidean norm
/// sqrt(K+1) and row 0 is all ones. For PiecewiseLinear, matrix() is the
/// block eigenvector matrix of the Galerkin tensors and has orthonormal rows.
class HaarTypeBasis {
 public:
  BasisKind kind() const noexcept { return kind_; }
  int size() const noexcept { return static_cast<int>(matrix_.rows()); }

  /// Level J for ClassicalHaar, subdomain count N for PiecewiseLinear,
  /// the size otherwise.
  int parameter() const noexcept { return parameter_; }

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  /// Orthogonal eigenvector frame: H / sqrt(K+1) for the piecewise-constant
  /// kinds, H itself for PiecewiseLinear.
  Eigen::MatrixXd normalized() const;

  bool piecewise_constant() const noexcept {
    return kind_ != BasisKind::PiecewiseLinear;
  }

  /// Number of equal stochastic cells the wavelets are polynomial on.
  int cells() const noexcept;

  friend HaarTypeBasis build_classical_haar(int level);
  friend HaarTypeBasis build_canonical_haar(
      int size, const std::optional<Eigen::MatrixXd>& orthogonal_block);
  friend HaarTypeBasis build_dct(int size);
  friend HaarTypeBasis build_piecewise_linear(int subdomains);
  friend HaarTypeBasis build_custom(const Eigen::MatrixXd& matrix);
  friend HaarTypeBasis build_constant();

 private:
  HaarTypeBasis(BasisKind kind, int parameter, Eigen::MatrixXd matrix)
      : kind_(kind), parameter_(parameter), matrix_(std::move(matrix)) {}

  BasisKind kind_;
  int parameter_;
  Eigen::MatrixXd matrix_;
};

/// Recursive Haar matrix of level J (K+1 = 2^(J+1)) with level-j wavelet rows
/// scaled by 2^(j/2). Levels above 12 are rejected.
HaarTypeBasis build_classical_haar(int level);

/// Canonical Haar matrix H_c, optionally premultiplied by diag(1, O) for a
/// user supplied orthogonal K x K block O.
HaarTypeBasis build_canonical_haar(
    int size, const std::optional<Eigen::MatrixXd>& orthogonal_block = {});

/// Orthogonal DCT-II matrix, rows scaled to norm sqrt(K+1).
HaarTypeBasis build_dct(int size);

/// Two orthonormal affine functions on each of N equal subdomains.
HaarTypeBasis build_piecewise_linear(int subdomains);

/// Any matrix with an all-ones first row and H H^T = (K+1) I.
HaarTypeBasis build_custom(const Eigen::MatrixXd& matrix);

HaarTypeBasis build_constant();

/// Value of wavelet k at xi in [0,1).
double evaluate_wavelet(const HaarTypeBasis& basis, int k, double xi);

/// max |Hn Hn^T - I| for the orthogonal frame of the basis.
double orthogonality_residual(const HaarTypeBasis& basis);

}  // namespace hsg

#endif  // HSG_BASIS_HPP
