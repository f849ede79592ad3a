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

#ifndef HSG_CONFIG_HPP
#define HSG_CONFIG_HPP

#include "hsg/basis.hpp"
#include "hsg/field.hpp"
#include "hsg/reconstruction.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hsg {

struct BasisConfig {
  BasisKind kind = BasisKind::ClassicalHaar;
  /// Level J: Haar level, or 2^(J+1) modes for the other kinds.
  std::optional<int> level;
  /// Explicit size: K+1 for dct / canonical, subdomains for piecewise-linear.
  std::optional<int> size;

  bool operator==(const BasisConfig&) const = default;
};

/// Builds the basis; `level` overrides the configured level and size.
HaarTypeBasis make_basis(const BasisConfig& config, std::optional<int> level = std::nullopt);

enum class ReferenceChoice { None, Exact, Collocation, MonteCarlo };

std::string to_string(ReferenceChoice choice);

struct ReferenceConfig {
  ReferenceChoice kind = ReferenceChoice::None;
  int cells = 64;        // collocation: stochastic cells
  int refinement = 4;    // collocation: grid refinement factor
  int samples = 200;     // Monte Carlo sample count

  bool operator==(const ReferenceConfig&) const = default;
};

struct LevelSweep {
  int first = 0;
  int last = 0;

  bool operator==(const LevelSweep&) const = default;
};

/// Parses "J0..J1" (or a single level). Throws ConfigError.
LevelSweep parse_level_sweep(const std::string& text);

/// A validated experiment description. Grid and end time default to the
/// values of the chosen preset.
struct RunConfig {
  std::string model;
  BasisConfig basis;
  Grid grid;
  double t_final = 0.0;
  double cfl = 0.45;
  CwenoParameters cweno;
  int output_stride = 0;  // snapshot every n steps; 0 keeps initial and final only
  std::string output_dir = "output";
  ReferenceConfig reference;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<LevelSweep> level_sweep;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the line-oriented format: `key = value` lines, `[section]` headers,
/// comments starting with '#' or ';'. Keys may also be written fully
/// qualified (`grid.nx = 400`) outside any section. Unknown keys and
/// out-of-range values throw ConfigError naming the key; syntax errors name
/// the line.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

/// Checks the semantic constraints; throws ConfigError naming the key.
void validate(const RunConfig& config);

}  // namespace hsg

#endif  // HSG_CONFIG_HPP
