#include "hsg/error.hpp"
#include "hsg/galerkin.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hsg;

namespace {

ModeVector modes(std::initializer_list<double> values) {
  ModeVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

const GalerkinTensor& haar0() {
  static const GalerkinTensor t(build_classical_haar(0));
  return t;
}

}  // namespace

TEST_CASE("triple products of the level-0 Haar basis") {
  const auto& t = haar0();
  Eigen::MatrixXd m1(2, 2);
  m1 << 0, 1, 1, 0;
  CHECK(max_abs(Eigen::MatrixXd(t.triple(0)) - Eigen::MatrixXd::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(Eigen::MatrixXd(t.triple(1)) - m1) < 1e-15);
}

TEST_CASE("tensor invariants hold for every basis kind") {
  const std::vector<HaarTypeBasis> bases = {
      build_classical_haar(2), build_canonical_haar(6), build_dct(4),
      build_dct(8), build_piecewise_linear(1), build_piecewise_linear(3)};
  for (const auto& b : bases) {
    CAPTURE(to_string(b.kind()));
    const GalerkinTensor t(b);
    const int n = t.size();
    if (b.piecewise_constant() || b.parameter() == 1) {
      CHECK(max_abs(Eigen::MatrixXd(t.triple(0)) - Eigen::MatrixXd::Identity(n, n)) < 1e-13);
    }
    CHECK(max_abs(t.galerkin_matrix(t.unit()) - Eigen::MatrixXd::Identity(n, n)) < 1e-13);
    for (int k = 0; k < n; ++k) {
      const Eigen::MatrixXd m(t.triple(k));
      CHECK(max_abs(m - m.transpose()) == 0.0);
      Eigen::MatrixXd diag = t.frame().transpose() * m * t.frame();
      diag.diagonal().setZero();
      CHECK(max_abs(diag) < 1e-12);
    }
    CHECK(check_commuting(t).commuting);
  }
}

TEST_CASE("perturbed triple products fail the commutation check") {
  const GalerkinTensor t(build_classical_haar(2));
  std::vector<SparseMatrix> m = t.triples();
  Eigen::MatrixXd dense(m[3]);
  dense(0, 5) += 1e-3;
  m[3] = dense.sparseView();
  const CommutationReport report = check_commuting(m);
  CHECK_FALSE(report.commuting);
  CHECK((report.first == 3 || report.second == 3));
}

TEST_CASE("Galerkin matrix and product examples") {
  const auto& t = haar0();
  Eigen::MatrixXd expected(2, 2);
  expected << 2, 1, 1, 2;
  CHECK(max_abs(t.galerkin_matrix(modes({2, 1})) - expected) < 1e-15);
  CHECK(max_abs(t.galerkin_matrix(modes({0, 0}))) == 0.0);

  CHECK(max_abs(t.product(modes({2, 1}), modes({2, -1})) - modes({3, 0})) < 1e-15);
  CHECK(max_abs(t.product(modes({2, 1}), modes({2, 1})) - modes({5, 4})) < 1e-15);
  const ModeVector q = modes({0.3, -1.7});
  CHECK(max_abs(t.product(t.unit(), q) - q) < 1e-15);
}

TEST_CASE("product is symmetric and agrees with the assembled Galerkin matrix") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (const auto& b : {build_classical_haar(3), build_dct(8), build_piecewise_linear(2)}) {
    const GalerkinTensor t(b);
    ModeVector u(t.size()), q(t.size()), w(t.size());
    for (int k = 0; k < t.size(); ++k) {
      u[k] = normal(rng);
      q[k] = normal(rng);
      w[k] = normal(rng);
    }
    CHECK(t.product(u, q) == t.product(q, u));
    CHECK(max_abs(t.product(u, q) - t.galerkin_matrix(u) * q) < 1e-12);
    CHECK(max_abs(t.product(u, t.product(q, w)) - t.product(t.product(u, q), w)) < 1e-12);
  }
}

TEST_CASE("spectral transform") {
  const auto& t = haar0();
  CHECK(max_abs(t.to_spectrum(modes({2, 1})) - modes({3, 1})) < 1e-15);
  CHECK(max_abs(t.to_spectrum(modes({1.5, 0})) - modes({1.5, 1.5})) < 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (const auto& b : {build_classical_haar(4), build_dct(7), build_canonical_haar(5),
                        build_piecewise_linear(4)}) {
    const GalerkinTensor t(b);
    ModeVector u(t.size());
    for (int k = 0; k < t.size(); ++k) u[k] = uni(rng);
    CHECK(max_abs(t.from_spectrum(t.to_spectrum(u)) - u) < 1e-12);
  }
}

TEST_CASE("spectrum equals the sorted eigenvalues of the Galerkin matrix") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (const auto& b : {build_classical_haar(3), build_dct(8), build_canonical_haar(7)}) {
    const GalerkinTensor t(b);
    ModeVector u(t.size());
    for (int k = 0; k < t.size(); ++k) u[k] = uni(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t.galerkin_matrix(u));
    Eigen::VectorXd d = t.to_spectrum(u);
    std::sort(d.begin(), d.end());
    CHECK(max_abs(solver.eigenvalues() - d) < 1e-10);
    for (int l = 0; l < t.size(); ++l) {
      CHECK(t.evaluate(u, (l + 0.5) / t.size()) == doctest::Approx(t.to_spectrum(u)[l]));
    }
  }
}

TEST_CASE("piecewise linear spectrum is the realization at Gauss nodes") {
  const GalerkinTensor t(build_piecewise_linear(3));
  const ModeVector u = modes({0.4, -0.2, 1.1, 0.3, -0.5, 0.9});
  const SpectrumVector d = t.to_spectrum(u);
  const double g = 0.5 / std::sqrt(3.0);
  for (int c = 0; c < 3; ++c) {
    CHECK(d[2 * c] == doctest::Approx(t.evaluate(u, (c + 0.5 + g) / 3.0)));
    CHECK(d[2 * c + 1] == doctest::Approx(t.evaluate(u, (c + 0.5 - g) / 3.0)));
  }
}

TEST_CASE("projection") {
  for (const auto& b : {build_classical_haar(2), build_dct(5), build_piecewise_linear(2)}) {
    const GalerkinTensor t(b);
    const ModeVector c = t.project([](double) { return 2.5; });
    CHECK(max_abs(c - 2.5 * t.unit()) < 1e-13);
  }
  const auto& t = haar0();
  const double half[] = {0.5};
  CHECK(max_abs(t.project([](double xi) { return xi < 0.5 ? -1.0 : 1.0; }, half) -
                modes({0, -1})) < 1e-15);
  const GalerkinTensor t3(build_classical_haar(3));
  CHECK(t3.project([](double xi) { return xi; })[0] == doctest::Approx(0.5).epsilon(1e-14));

  // A breakpoint inside a cell makes a jump exact there.
  const double cut[] = {0.3};
  const ModeVector jump = t.project([](double xi) { return xi < 0.3 ? 1.0 : 0.0; }, cut);
  CHECK(jump[0] == doctest::Approx(0.3).epsilon(1e-15));

  // Piecewise linear data is reproduced exactly by the piecewise linear basis.
  const GalerkinTensor pl(build_piecewise_linear(2));
  const ModeVector lin = pl.project([](double xi) { return 3.0 * xi - 1.0; });
  for (double xi : {0.1, 0.37, 0.62, 0.99}) {
    CHECK(pl.evaluate(lin, xi) == doctest::Approx(3.0 * xi - 1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(t.project([](double) { return std::nan(""); }), InvalidArgument);
}

TEST_CASE("power, sign, abs, norm and root examples") {
  const auto& t = haar0();
  const ModeVector u = modes({2, 1});
  CHECK(max_abs(power_modes(t, u, 1.0) - u) < 1e-15);
  CHECK(max_abs(power_modes(t, modes({3, 0}), 2.0) - modes({9, 0})) < 1e-14);
  CHECK(max_abs(power_modes(t, u, 2.0) - modes({5, 4})) < 1e-14);
  CHECK_THROWS_AS(power_modes(t, modes({0, 1}), 2.0), AdmissibilityError);
  try {
    power_modes(t, modes({0, 1}), 2.0);
  } catch (const AdmissibilityError& e) {
    CHECK(e.cell() == 1);
  }

  CHECK(max_abs(sign_modes(t, modes({0.7, 0})) - t.unit()) < 1e-15);
  CHECK(max_abs(sign_modes(t, modes({-2, 1})) - modes({-1, 0})) < 1e-15);
  CHECK(max_abs(sign_modes(t, modes({0, 0}))) == 0.0);

  CHECK(max_abs(abs_modes(t, modes({-2, 1})) - modes({2, -1})) < 1e-15);
  CHECK(max_abs(abs_modes(t, u) - u) < 1e-15);
  CHECK(max_abs(jacobian_abs(t, modes({-3, 1})) + Eigen::MatrixXd::Identity(2, 2)) < 1e-15);

  const ModeVector w = modes({-0.4, 1.3});
  CHECK(max_abs(abs_modes(t, w) - t.product(sign_modes(t, w), w)) < 1e-15);

  const std::vector<ModeVector> one = {w};
  CHECK(max_abs(pnorm_modes(t, one, 2.0) - abs_modes(t, w)) < 1e-15);
  const std::vector<ModeVector> pair = {modes({3, 1}), modes({0, 0})};
  CHECK(max_abs(pnorm_modes(t, pair, 2.0) - modes({3, 1})) < 1e-15);
  const std::vector<ModeVector> diag = {modes({0, 1}), modes({1, 0})};
  CHECK(max_abs(pnorm_modes(t, diag, 2.0) - modes({std::sqrt(2.0), 0})) < 1e-15);

  CHECK(max_abs(nth_root_modes(t, modes({5, 4}), 2) - modes({2, 1})) < 1e-15);
  CHECK(max_abs(nth_root_modes(t, modes({7, 0}), 2) - modes({std::sqrt(7.0), 0})) < 1e-15);
  CHECK(max_abs(t.to_spectrum(nth_root_modes(t, modes({2, 2}), 2)) - modes({2, 0})) < 1e-15);
  CHECK_THROWS_AS(nth_root_modes(t, modes({1, 2}), 2), AdmissibilityError);
}

TEST_CASE("moments") {
  const auto& t = haar0();
  const ModeVector u = modes({2, 1});
  CHECK(max_abs(moment_modes(t, u, 1) - u) < 1e-15);
  CHECK(max_abs(moment_modes(t, u, 3) - modes({14, 13})) < 1e-13);

  const GalerkinTensor t3(build_classical_haar(3));
  ModeVector v = t3.project([](double xi) { return std::sin(7 * xi) + 0.2; });
  const ModeVector m2 = moment_modes(t3, v, 2);
  CHECK(max_abs(moment_modes(t3, v, 4) - t3.product(m2, m2)) < 1e-12);
  CHECK(max_abs(moment_modes(t3, v, 3) - t3.from_spectrum(t3.to_spectrum(v).array().cube().matrix())) < 1e-12);
}

TEST_CASE("root objective gradient vanishes at the closed-form root") {
  const auto& t = haar0();
  CHECK(convex_root_objective(t, modes({1, 0}), modes({1, 0}), 2).gradient.norm() < 1e-15);
  CHECK(convex_root_objective(t, modes({5, 4}), modes({2, 1}), 2).gradient.norm() < 1e-13);
  const GalerkinTensor pl(build_piecewise_linear(3));
  const ModeVector rho = pl.project([](double xi) { return 1.0 + xi * xi; });
  for (int n : {2, 3}) {
    CHECK(convex_root_objective(pl, rho, nth_root_modes(pl, rho, n), n).gradient.norm() < 1e-12);
  }
  // The objective is larger away from the minimizer.
  const ModeVector root = nth_root_modes(pl, rho, 2);
  const double at_root = convex_root_objective(pl, rho, root, 2).value;
  CHECK(convex_root_objective(pl, rho, root + 0.05 * pl.unit(), 2).value > at_root);
}

TEST_CASE("admissibility classification") {
  const auto& t = haar0();
  const auto strict = is_admissible(t, modes({2, 1}));
  CHECK(strict.positivity == Positivity::StrictlyPositive);
  CHECK(strict.min_value == doctest::Approx(1.0));
  const auto semi = is_admissible(t, modes({1, 1}));
  CHECK(semi.positivity == Positivity::SemiPositive);
  CHECK(semi.min_value == 0.0);
  const auto bad = is_admissible(t, modes({0, 1}));
  CHECK(bad.positivity == Positivity::Indefinite);
  CHECK(bad.min_value == -1.0);
  CHECK(bad.min_cell == 1);
}

TEST_CASE("eigenvalue derivative identity") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const GalerkinTensor t(build_classical_haar(2));
  ModeVector u(t.size()), q(t.size());
  for (int k = 0; k < t.size(); ++k) {
    u[k] = normal(rng);
    q[k] = normal(rng);
  }
  CHECK(eigen_derivative_check(t, u, q) < 1e-6);
  CHECK(eigen_derivative_check(t, u, ModeVector::Zero(t.size())) == 0.0);
  CHECK(max_abs(t.frame().transpose() * t.galerkin_matrix(t.unit()) - t.frame().transpose()) < 1e-14);
}

TEST_CASE("Jacobians match central finite differences") {
  const GalerkinTensor t(build_classical_haar(2));
  const ModeVector u = t.project([](double xi) { return 1.0 + xi + 0.3 * std::sin(9 * xi); });
  const ModeVector v = t.project([](double xi) { return std::cos(5 * xi) - 0.2; });
  auto fd = [&](auto&& f, const ModeVector& at) {
    Eigen::MatrixXd j(t.size(), t.size());
    for (int k = 0; k < t.size(); ++k) {
      ModeVector p = at, m = at;
      p[k] += 1e-6;
      m[k] -= 1e-6;
      j.col(k) = (f(p) - f(m)) / 2e-6;
    }
    return j;
  };
  auto rel = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return max_abs(a - b) / std::max(1.0, max_abs(b));
  };
  for (double gamma : {4.0 / 3.0, 2.0, 3.0, 0.5, -1.5}) {
    CHECK(rel(jacobian_power(t, u, gamma),
              fd([&](const ModeVector& a) { return power_modes(t, a, gamma); }, u)) < 1e-5);
  }
  CHECK(rel(jacobian_abs(t, v), fd([&](const ModeVector& a) { return abs_modes(t, a); }, v)) < 1e-5);
  std::vector<ModeVector> comps = {u, v};
  for (double p : {1.5, 2.0, 3.0}) {
    for (int i = 0; i < 2; ++i) {
      auto f = [&](const ModeVector& a) {
        std::vector<ModeVector> c = comps;
        c[static_cast<std::size_t>(i)] = a;
        return pnorm_modes(t, c, p);
      };
      CHECK(rel(jacobian_pnorm(t, comps, p, i), fd(f, comps[static_cast<std::size_t>(i)])) < 1e-5);
    }
  }
  CHECK_THROWS_AS(jacobian_power(t, modes({1, 1, 0, 0, 0, 0, 0, 0}), 0.5), AdmissibilityError);
}

TEST_CASE("consistency of the power projection improves with level") {
  double previous = 1e300;
  for (int level = 0; level <= 4; ++level) {
    const GalerkinTensor t(build_classical_haar(level));
    const ModeVector u = t.project([](double xi) { return 1.0 + xi; });
    const ModeVector p = power_modes(t, u, 4.0 / 3.0);
    double err = 0.0;
    for (int i = 0; i < 4000; ++i) {
      const double xi = (i + 0.5) / 4000.0;
      const double e = t.evaluate(p, xi) - std::pow(1.0 + xi, 4.0 / 3.0);
      err += e * e / 4000.0;
    }
    err = std::sqrt(err);
    CHECK(err < previous);
    previous = err;
  }
}
