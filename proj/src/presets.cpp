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

#include "hsg/presets.hpp"

#include "hsg/error.hpp"

#include <array>
#include <cmath>

namespace hsg {

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

Grid grid_1d(int nx, double lo, double hi) {
  Grid g;
  g.dim = 1;
  g.nx = nx;
  g.ny = 1;
  g.x_min = lo;
  g.x_max = hi;
  return g;
}

Grid grid_2d(int n, double lo, double hi) {
  Grid g;
  g.dim = 2;
  g.nx = n;
  g.ny = n;
  g.x_min = lo;
  g.x_max = hi;
  g.y_min = lo;
  g.y_max = hi;
  return g;
}

// Projects xi -> f(xi) on the tensor, or evaluates it at the fixed xi.
ModeVector parameter_modes(const GalerkinTensor& tensor, std::optional<double> xi,
                           const std::function<double(double)>& f) {
  if (xi) return f(*xi) * tensor.unit();
  return tensor.project(f);
}

Problem scalar_oleinik() {
  Problem p;
  p.name = "scalar-oleinik";
  p.grid = grid_1d(400, -1.5, 1.5);
  p.t_final = 0.2;
  p.components = 1;
  p.initial = [](double x, double, double xi, double* out) {
    out[0] = sign_of(x - (xi - 0.5));
  };
  p.xi_breaks = [](double x, double) {
    const double b = x + 0.5;
    return (b > 0.0 && b < 1.0) ? std::vector<double>{b} : std::vector<double>{};
  };
  p.model = [](std::shared_ptr<const GalerkinTensor> t, std::optional<double>) {
    return std::make_unique<ScalarLipschitz>(std::move(t));
  };
  return p;
}

Problem levelset_box() {
  Problem p;
  p.name = "levelset-box";
  p.grid = grid_2d(100, -4.0, 4.0);
  p.t_final = 1.0;
  p.components = 2;
  p.initial = [](double x, double y, double, double* out) {
    const bool inside = std::abs(x) <= 2.0 && std::abs(y) <= 2.0;
    out[0] = inside ? 1.0 : -1.0;
    out[1] = 0.0;
  };
  p.model = [](std::shared_ptr<const GalerkinTensor> t, std::optional<double> xi) {
    const ModeVector v = parameter_modes(*t, xi, [](double s) { return 0.5 + 0.5 * s; });
    return std::make_unique<LevelSet2D>(std::move(t), v);
  };
  return p;
}

Problem psystem_riemann() {
  Problem p;
  p.name = "psystem-riemann";
  p.grid = grid_1d(400, -2.0, 2.0);
  p.t_final = 1.0;
  p.components = 2;
  // State ordering (u, v); the specific volume jumps from 1 to 3.
  p.initial = [](double x, double, double, double* out) {
    out[0] = 0.0;
    out[1] = x < 0.0 ? 1.0 : 3.0;
  };
  p.model = [](std::shared_ptr<const GalerkinTensor> t, std::optional<double> xi) {
    constexpr double g1 = 5.0 / 3.0;
    constexpr double g2 = 4.0 / 3.0;
    auto vstar = [](double s) { return 1.0 + 0.5 * s; };
    PSystem1D::Parameters params{
        g1, g2, parameter_modes(*t, xi, vstar),
        parameter_modes(*t, xi, [&](double s) {
          return std::pow(vstar(s), -g1) - std::pow(vstar(s), -g2);
        })};
    return std::make_unique<PSystem1D>(std::move(t), std::move(params));
  };
  return p;
}

Problem euler_box() {
  Problem p;
  p.name = "euler-box";
  p.grid = grid_2d(100, -2.0, 2.0);
  p.t_final = 0.5;
  p.components = 3;
  p.initial = [](double x, double y, double xi, double* out) {
    const bool inside = std::abs(x) <= 1.0 && std::abs(y) <= 1.0;
    out[0] = inside ? 2.0 + xi : 1.0;
    out[1] = 0.0;
    out[2] = 0.0;
  };
  p.model = [](std::shared_ptr<const GalerkinTensor> t, std::optional<double>) {
    return std::make_unique<Euler2D>(std::move(t), 4.0 / 3.0);
  };
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"scalar-oleinik", "levelset-box", "psystem-riemann", "euler-box"};
}

Problem make_preset(const std::string& name) {
  if (name == "scalar-oleinik") return scalar_oleinik();
  if (name == "levelset-box") return levelset_box();
  if (name == "psystem-riemann") return psystem_riemann();
  if (name == "euler-box") return euler_box();
  throw ConfigError("unknown preset '" + name + "'");
}

std::shared_ptr<const GalerkinTensor> constant_tensor() {
  static const auto tensor = std::make_shared<const GalerkinTensor>(build_constant());
  return tensor;
}

GpcField initial_field(const Problem& problem, const GalerkinTensor& tensor,
                       std::optional<double> xi) {
  problem.grid.validate();
  const Grid& g = problem.grid;
  const int m = problem.components;
  const int n = tensor.size();
  if (xi && n != 1) throw InvalidArgument("a fixed realization needs the constant basis");
  GpcField field(g, m, n);
  std::array<double, 4> values{};
  for (int j = 0; j < (g.dim == 2 ? g.ny : 1); ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_center(i);
      const double y = g.y_center(j);
      double* cell = field.cell(i, j);
      if (xi) {
        problem.initial(x, y, *xi, values.data());
        for (int c = 0; c < m; ++c) cell[c] = values[static_cast<std::size_t>(c)];
        continue;
      }
      const std::vector<double> breaks =
          problem.xi_breaks ? problem.xi_breaks(x, y) : std::vector<double>{};
      for (int c = 0; c < m; ++c) {
        const ModeVector modes = tensor.project(
            [&](double s) {
              problem.initial(x, y, s, values.data());
              return values[static_cast<std::size_t>(c)];
            },
            breaks);
        for (int k = 0; k < n; ++k) cell[c * n + k] = modes[k];
      }
    }
  }
  return field;
}

GpcField cell_average_field(const Grid& grid, const GalerkinTensor& tensor,
                            const std::function<double(double, double)>& f) {
  grid.validate();
  constexpr std::array<double, 3> nodes = {-0.7745966692414833770358531, 0.0,
                                           0.7745966692414833770358531};
  constexpr std::array<double, 3> weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  GpcField field(grid, 1, tensor.size());
  const int ny = grid.dim == 2 ? grid.ny : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double avg = 0.0;
      for (std::size_t a = 0; a < 3; ++a) {
        const double x = grid.x_center(i) + 0.5 * grid.dx() * nodes[a];
        if (grid.dim == 1) {
          avg += weights[a] * f(x, 0.0);
          continue;
        }
        for (std::size_t b = 0; b < 3; ++b) {
          const double y = grid.y_center(j) + 0.5 * grid.dy() * nodes[b];
          avg += weights[a] * weights[b] * f(x, y);
        }
      }
      Eigen::Map<Eigen::VectorXd>(field.cell(i, j), tensor.size()) = avg * tensor.unit();
    }
  }
  return field;
}

}  // namespace hsg
