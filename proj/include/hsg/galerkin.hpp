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

#ifndef HSG_GALERKIN_HPP
#define HSG_GALERKIN_HPP

#include "hsg/basis.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hsg {

/// gPC coefficients of one scalar random quantity.
using ModeVector = Eigen::VectorXd;

/// Diagonal of V^T P(u) V, indexed by stochastic cell. For piecewise-constant
/// bases these are the realizations on the K+1 cells; for the piecewise-linear
/// basis they are the realizations at the two Gauss nodes of each subdomain.
using SpectrumVector = Eigen::VectorXd;

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Precomputed Galerkin structure of one basis: triple-product matrices M_k,
/// the shared eigenvector frame V, and the linear maps between modes and
/// spectra. Immutable after construction and safe to share across threads.
class GalerkinTensor {
 public:
  /// Throws InvalidArgument if a custom basis does not yield commuting
  /// triple-product matrices.
  explicit GalerkinTensor(HaarTypeBasis basis);

  const HaarTypeBasis& basis() const noexcept { return basis_; }
  int size() const noexcept { return basis_.size(); }

  /// Orthogonal eigenvector frame V; column l belongs to spectral entry l.
  const Eigen::MatrixXd& frame() const noexcept { return frame_; }

  /// Modes of the constant function 1, the neutral element of the product.
  const ModeVector& unit() const noexcept { return unit_; }

  /// Matrices of the transforms: d = analysis()^T u and u = synthesis() d.
  const Eigen::MatrixXd& analysis() const noexcept { return eigen_table_; }
  const Eigen::MatrixXd& synthesis() const noexcept { return synthesis_; }

  /// Triple-product matrix M_k, built on first use.
  const SparseMatrix& triple(int k) const;
  const std::vector<SparseMatrix>& triples() const;

  SpectrumVector to_spectrum(const ModeVector& u) const;
  ModeVector from_spectrum(const SpectrumVector& d) const;

  /// Matrix of the linear map u -> from_spectrum(diag * to_spectrum(u)),
  /// i.e. V diag(values) V^T.
  Eigen::MatrixXd spectral_operator(const Eigen::VectorXd& values) const;

  /// P(u) = sum_k u_k M_k, assembled from the triple products.
  Eigen::MatrixXd galerkin_matrix(const ModeVector& u) const;

  /// u * q, evaluated as a pointwise product of spectra.
  ModeVector product(const ModeVector& u, const ModeVector& q) const;

  /// Modes of f projected onto the basis. Cell integrals use composite
  /// 5-point Gauss-Legendre with 8 panels; panels are split at the given
  /// breakpoints so jumps located there are integrated exactly.
  ModeVector project(const std::function<double(double)>& f,
                     std::span<const double> breakpoints = {}) const;

  /// Evaluates the expansion at xi in [0,1).
  double evaluate(const ModeVector& u, double xi) const;

 private:
  struct TripleCache;

  HaarTypeBasis basis_;
  Eigen::MatrixXd frame_;
  Eigen::MatrixXd eigen_table_;  // d = eigen_table_^T u
  Eigen::MatrixXd synthesis_;    // u = synthesis_ d
  ModeVector unit_;
  std::shared_ptr<TripleCache> cache_;
};

struct CommutationReport {
  bool commuting;
  double worst;
  int first;
  int second;
};

/// Pairwise commutators; passes when every max-norm is below 1e-10.
CommutationReport check_commuting(const std::vector<SparseMatrix>& matrices);
CommutationReport check_commuting(const GalerkinTensor& tensor);

enum class Positivity { StrictlyPositive, SemiPositive, Indefinite };

struct AdmissibilityReport {
  Positivity positivity;
  double min_value;
  int min_cell;
};

/// Tolerance for treating a slightly negative spectral value as zero.
inline constexpr double kSemiPositiveTolerance = 1e-13;

AdmissibilityReport is_admissible(const GalerkinTensor& t, const ModeVector& u);

ModeVector power_modes(const GalerkinTensor& t, const ModeVector& u, double gamma);
Eigen::MatrixXd jacobian_power(const GalerkinTensor& t, const ModeVector& u,
                               double gamma);

/// sign(0) is taken as 0.
ModeVector sign_modes(const GalerkinTensor& t, const ModeVector& u);

ModeVector abs_modes(const GalerkinTensor& t, const ModeVector& u);
Eigen::MatrixXd jacobian_abs(const GalerkinTensor& t, const ModeVector& u);

ModeVector pnorm_modes(const GalerkinTensor& t, std::span<const ModeVector> u,
                       double p);

/// Derivative of pnorm_modes with respect to component i. Spectral entries
/// where the norm vanishes contribute zero.
Eigen::MatrixXd jacobian_pnorm(const GalerkinTensor& t,
                               std::span<const ModeVector> u, double p, int i);

ModeVector nth_root_modes(const GalerkinTensor& t, const ModeVector& rho, int n);

/// P^m(u) applied to the unit modes, by repeated products with P(u).
ModeVector moment_modes(const GalerkinTensor& t, const ModeVector& u, int m);

struct ObjectiveValue {
  double value;
  ModeVector gradient;
};

/// unit^T P^{n+1}(alpha) unit / (n+1) - rho^T alpha and its gradient
/// P^n(alpha) unit - rho, evaluated with the assembled Galerkin matrix.
ObjectiveValue convex_root_objective(const GalerkinTensor& t, const ModeVector& rho,
                                     const ModeVector& alpha, int n);

/// Max-norm of diag(V^T q) J - V^T P(q), where J is the central finite
/// difference Jacobian of the spectrum at u.
double eigen_derivative_check(const GalerkinTensor& t, const ModeVector& u,
                              const ModeVector& q);

}  // namespace hsg

#endif  // HSG_GALERKIN_HPP
