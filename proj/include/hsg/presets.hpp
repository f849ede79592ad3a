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

#ifndef HSG_PRESETS_HPP
#define HSG_PRESETS_HPP

#include "hsg/field.hpp"
#include "hsg/models.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hsg {

/// A random initial value problem: initial data u0(x, y, xi) with xi ~ U[0,1),
/// the random model parameters, and the default grid and end time.
struct Problem {
  std::string name;
  Grid grid;
  double t_final = 0.0;
  int components = 1;

  /// Writes the components of u0(x, y, xi).
  std::function<void(double x, double y, double xi, double* out)> initial;

  /// xi-locations where u0(x, y, .) jumps; may be empty.
  std::function<std::vector<double>(double x, double y)> xi_breaks;

  /// Builds the Galerkin model on the given tensor. With a fixed xi the
  /// random parameters are frozen at that realization (deterministic solve
  /// on the constant basis).
  std::function<std::unique_ptr<Model>(std::shared_ptr<const GalerkinTensor>,
                                       std::optional<double> xi)>
      model;
};

/// Names accepted by make_preset.
std::vector<std::string> preset_names();

/// scalar-oleinik, levelset-box, psystem-riemann or euler-box. Throws
/// ConfigError for other names.
Problem make_preset(const std::string& name);

/// Shared tensor of the single constant function, used for per-sample solves.
std::shared_ptr<const GalerkinTensor> constant_tensor();

/// Projects u0 at every cell centre. With a fixed xi the constant-basis
/// field holding u0(x, y, xi) is returned instead.
GpcField initial_field(const Problem& problem, const GalerkinTensor& tensor,
                       std::optional<double> xi = std::nullopt);

/// Exact cell averages of a deterministic function, by 3-point Gauss in each
/// direction; stored as mode 0 of a field over the given tensor.
GpcField cell_average_field(const Grid& grid, const GalerkinTensor& tensor,
                            const std::function<double(double, double)>& f);

}  // namespace hsg

#endif  // HSG_PRESETS_HPP
