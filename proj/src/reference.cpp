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

#include "hsg/reference.hpp"

#include "hsg/error.hpp"
#include "hsg/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace hsg {

namespace {

// 5-point Gauss-Legendre on [-1, 1], mapped to [0, 1] at the call site.
constexpr std::array<double, 5> kNodes = {
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269};
constexpr std::array<double, 5> kWeights = {
    0.2369268850561890875142640, 0.4786286704993664680412915,
    0.5688888888888888888888889, 0.4786286704993664680412915,
    0.2369268850561890875142640};

int fine_index(double x, double lo, double h, int n) {
  const int i = static_cast<int>(std::floor((x - lo) / h));
  return std::clamp(i, 0, n - 1);
}

template <class Pointwise>
double stochastic_integral(const GpcField& field, const GalerkinTensor& tensor,
                           const ReferenceField& reference, int component,
                           const Pointwise& pointwise) {
  const Grid& g = field.grid();
  if (field.modes() != tensor.size()) throw InvalidArgument("field does not match the basis");
  if (component < 0 || component >= field.components() ||
      component >= reference.components()) {
    throw InvalidArgument("component index out of range");
  }
  const int n = tensor.size();
  const int cells = tensor.basis().cells();
  const bool constant = tensor.basis().piecewise_constant();
  const double area = g.dx() * g.dy();
  const int ny = g.dim == 2 ? g.ny : 1;

  double total = 0.0;
  std::vector<double> cuts;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_center(i);
      const double y = g.y_center(j);
      const Eigen::Map<const Eigen::VectorXd> modes(field.cell(i, j) + component * n, n);
      SpectrumVector spectrum;
      if (constant) spectrum = tensor.to_spectrum(modes);

      cuts.clear();
      for (int l = 0; l <= cells; ++l) cuts.push_back(static_cast<double>(l) / cells);
      for (double b : reference.xi_breaks(x, y)) {
        if (b > 0.0 && b < 1.0) cuts.push_back(b);
      }
      std::sort(cuts.begin(), cuts.end());

      double expectation = 0.0;
      for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double a = cuts[p];
        const double h = cuts[p + 1] - a;
        if (h <= 0.0) continue;
        const int cell = std::min(static_cast<int>((a + 0.5 * h) * cells), cells - 1);
        for (std::size_t q = 0; q < kNodes.size(); ++q) {
          const double xi = a + 0.5 * h * (1.0 + kNodes[q]);
          const double u = constant ? spectrum[cell] : tensor.evaluate(modes, xi);
          expectation +=
              0.5 * h * kWeights[q] * pointwise(u - reference.value(x, y, xi, component));
        }
      }
      total += area * expectation;
    }
  }
  return total;
}

}  // namespace

double exact_scalar(double t, double x, double xi) {
  if (!(t > 0.0)) throw InvalidArgument("exact scalar solution needs t > 0");
  const double s = (x - (xi - 0.5)) / t;
  if (s < -3.0) return -1.0;
  if (s < -1.0) return 0.5 * (s + 1.0);
  if (s < 1.0) return 0.0;
  if (s < 3.0) return 0.5 * (s - 1.0);
  return 1.0;
}

std::string to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::ExactScalar:
      return "exact";
    case ReferenceKind::Collocation:
      return "collocation";
    case ReferenceKind::MonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

ExactScalarReference::ExactScalarReference(double t) : t_(t) {
  if (!(t > 0.0)) throw InvalidArgument("exact scalar solution needs t > 0");
}

double ExactScalarReference::value(double x, double, double xi, int component) const {
  if (component != 0) throw InvalidArgument("scalar reference has one component");
  return exact_scalar(t_, x, xi);
}

std::vector<double> ExactScalarReference::xi_breaks(double x, double) const {
  // Branch joins xhat / t = s, i.e. xi = x + 1/2 - s t.
  std::vector<double> out;
  for (double s : {-3.0, -1.0, 1.0, 3.0}) {
    const double xi = x + 0.5 - s * t_;
    if (xi > 0.0 && xi < 1.0) out.push_back(xi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CollocationReference::CollocationReference(const Problem& problem, int cells, int refinement,
                                           double t_final, const SchemeOptions& options)
    : t_(t_final), components_(problem.components), grid_(problem.grid) {
  if (cells < 1) throw InvalidArgument("collocation needs at least one stochastic cell");
  if (refinement < 1) throw InvalidArgument("refinement factor must be positive");
  grid_.nx *= refinement;
  if (grid_.dim == 2) grid_.ny *= refinement;
  grid_.validate();

  Problem fine = problem;
  fine.grid = grid_;
  SchemeOptions serial = options;
  serial.threads = 1;
  runs_.resize(static_cast<std::size_t>(cells));
  auto tensor = constant_tensor();
  parallel_for(cells, options.threads, [&](int begin, int end) {
    for (int l = begin; l < end; ++l) {
      const double xi = (l + 0.5) / cells;
      const auto model = fine.model(tensor, xi);
      GpcField u = initial_field(fine, *tensor, xi);
      if (t_final > 0.0) advance(*model, u, t_final, serial);
      runs_[static_cast<std::size_t>(l)] = std::move(u);
    }
  });
}

double CollocationReference::value(double x, double y, double xi, int component) const {
  if (component < 0 || component >= components_) {
    throw InvalidArgument("component index out of range");
  }
  const int n = cells();
  const int l = std::clamp(static_cast<int>(std::floor(xi * n)), 0, n - 1);
  const int i = fine_index(x, grid_.x_min, grid_.dx(), grid_.nx);
  const int j = grid_.dim == 2 ? fine_index(y, grid_.y_min, grid_.dy(), grid_.ny) : 0;
  return runs_[static_cast<std::size_t>(l)].cell(i, j)[component];
}

std::vector<double> CollocationReference::xi_breaks(double, double) const {
  std::vector<double> out;
  for (int l = 1; l < cells(); ++l) out.push_back(static_cast<double>(l) / cells());
  return out;
}

double sample_xi(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 engine(seq);
  double xi = std::generate_canonical<double, 53>(engine);
  // generate_canonical may round up to 1 in rare cases.
  if (xi >= 1.0) xi = std::nextafter(1.0, 0.0);
  return xi;
}

std::vector<double> profile_along_y0(const GpcField& field, int component, int mode) {
  const Grid& g = field.grid();
  if (component < 0 || component >= field.components() || mode < 0 ||
      mode >= field.modes()) {
    throw InvalidArgument("profile component or mode out of range");
  }
  const int offset = component * field.modes() + mode;
  std::vector<double> out(static_cast<std::size_t>(g.nx));
  if (g.dim == 1) {
    for (int i = 0; i < g.nx; ++i) out[static_cast<std::size_t>(i)] = field.cell(i)[offset];
    return out;
  }
  // Row j0 has the last centre below or at y = 0.
  const double pos = (0.0 - g.y_min) / g.dy() - 0.5;
  int j0 = static_cast<int>(std::floor(pos));
  double w = pos - j0;
  if (j0 < 0) {
    j0 = 0;
    w = 0.0;
  } else if (j0 >= g.ny - 1) {
    j0 = g.ny - 1;
    w = 0.0;
  }
  const int j1 = std::min(j0 + 1, g.ny - 1);
  for (int i = 0; i < g.nx; ++i) {
    out[static_cast<std::size_t>(i)] =
        (1.0 - w) * field.cell(i, j0)[offset] + w * field.cell(i, j1)[offset];
  }
  return out;
}

MonteCarloEnvelope monte_carlo_reference(const Problem& problem, int samples,
                                         std::uint64_t seed, double t_final,
                                         const SchemeOptions& options) {
  if (samples < 1) throw InvalidArgument("Monte Carlo needs at least one sample");
  const Grid& g = problem.grid;
  const int nx = g.nx;
  const int m = problem.components;

  struct Outcome {
    double xi = 0.0;
    bool ok = false;
    std::string message;
    std::vector<double> profile;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(samples));
  SchemeOptions serial = options;
  serial.threads = 1;
  auto tensor = constant_tensor();
  parallel_for(samples, options.threads, [&](int begin, int end) {
    for (int s = begin; s < end; ++s) {
      Outcome& out = outcomes[static_cast<std::size_t>(s)];
      out.xi = sample_xi(seed, s);
      try {
        const auto model = problem.model(tensor, out.xi);
        GpcField u = initial_field(problem, *tensor, out.xi);
        if (t_final > 0.0) advance(*model, u, t_final, serial);
        out.profile.reserve(static_cast<std::size_t>(m * nx));
        for (int c = 0; c < m; ++c) {
          const std::vector<double> p = profile_along_y0(u, c);
          out.profile.insert(out.profile.end(), p.begin(), p.end());
        }
        out.ok = true;
      } catch (const Error& e) {
        out.message = "sample " + std::to_string(s) + " (xi = " + std::to_string(out.xi) +
                      "): " + e.what();
      }
    }
  });

  MonteCarloEnvelope env;
  env.components = m;
  for (int i = 0; i < nx; ++i) env.x.push_back(g.x_center(i));
  const std::size_t size = static_cast<std::size_t>(m * nx);
  env.min.assign(size, std::numeric_limits<double>::infinity());
  env.max.assign(size, -std::numeric_limits<double>::infinity());
  env.mean.assign(size, 0.0);
  for (Outcome& out : outcomes) {
    if (!out.ok) {
      ++env.failures;
      env.failure_messages.push_back(std::move(out.message));
      continue;
    }
    for (std::size_t k = 0; k < size; ++k) {
      env.min[k] = std::min(env.min[k], out.profile[k]);
      env.max[k] = std::max(env.max[k], out.profile[k]);
      env.mean[k] += out.profile[k];
    }
    env.xi.push_back(out.xi);
    env.profiles.push_back(std::move(out.profile));
  }
  if (env.profiles.empty()) throw SolverError("every Monte Carlo sample failed");
  for (double& v : env.mean) v /= static_cast<double>(env.profiles.size());
  return env;
}

double mse(const GpcField& field, const GalerkinTensor& tensor, const ReferenceField& reference,
           int component) {
  return stochastic_integral(field, tensor, reference, component,
                             [](double d) { return d * d; });
}

double l1_distance(const GpcField& field, const GalerkinTensor& tensor,
                   const ReferenceField& reference, int component) {
  return stochastic_integral(field, tensor, reference, component,
                             [](double d) { return std::abs(d); });
}

std::pair<GpcField, GpcField> mean_std(const GpcField& field, const GalerkinTensor& tensor) {
  if (field.modes() != tensor.size()) throw InvalidArgument("field does not match the basis");
  const int n = tensor.size();
  const int m = field.components();
  GpcField mean(field.grid(), m, 1);
  GpcField std_dev(field.grid(), m, 1);
  mean.set_time(field.time());
  std_dev.set_time(field.time());
  const ModeVector& unit = tensor.unit();
  for (int c = 0; c < field.grid().cells(); ++c) {
    for (int k = 0; k < m; ++k) {
      const Eigen::Map<const Eigen::VectorXd> u(field.cell(c) + k * n, n);
      double mu = 0.0;
      double var = 0.0;
      if (tensor.basis().piecewise_constant()) {
        // unit = e_1: mean is mode 0, std the norm of the remaining modes.
        mu = u[0];
        var = u.tail(n - 1).squaredNorm();
      } else {
        mu = u.dot(unit);
        var = std::max(0.0, u.squaredNorm() - mu * mu);
      }
      mean.cell(c)[k] = mu;
      std_dev.cell(c)[k] = std::sqrt(var);
    }
  }
  return {std::move(mean), std::move(std_dev)};
}

}  // namespace hsg
