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

#include "hsg/config.hpp"

#include "hsg/error.hpp"
#include "hsg/presets.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hsg {

namespace {

constexpr int kMaxLevel = 12;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model",          "t_final",        "cfl",           "seed",
      "threads",        "level_sweep",    "basis.kind",    "basis.level",
      "basis.size",     "grid.nx",        "grid.ny",       "grid.x_min",
      "grid.x_max",     "grid.y_min",     "grid.y_max",    "grid.boundary",
      "cweno.eps",      "cweno.power",    "output.stride", "output.dir",
      "reference.kind", "reference.cells", "reference.refinement",
      "reference.samples",
  };
  return keys;
}

const std::set<std::string>& known_sections() {
  static const std::set<std::string> names = {"basis", "grid", "cweno", "output", "reference"};
  return names;
}

using Entries = std::map<std::string, std::string>;

Entries flatten(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }

  // The reader drops sections without keys; check every header by hand.
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const auto open = line.find_first_not_of(" \t");
    const auto close = line.find(']');
    if (open == std::string::npos || line[open] != '[' || close == std::string::npos) continue;
    const std::string name = line.substr(open + 1, close - open - 1);
    if (!known_sections().count(name)) throw ConfigError("unknown section '" + name + "'");
  }

  Entries entries;
  auto insert = [&](const std::string& key, const std::string& value) {
    if (!entries.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
  };
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      insert(name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) insert(name + "." + key, leaf.data());
  }
  for (const auto& [key, value] : entries) {
    if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'");
  }
  return entries;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw ConfigError(key + ": expected " + expected + ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) bad_value(key, value, "a number");
  return out;
}

template <typename T>
T to_integer(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value, "an integer");
  return out;
}

BasisKind basis_kind_from_string(const std::string& text) {
  for (BasisKind k : {BasisKind::ClassicalHaar, BasisKind::CanonicalHaar, BasisKind::Dct,
                      BasisKind::PiecewiseLinear, BasisKind::Constant}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("basis.kind: unknown basis '" + text +
                    "' (haar, canonical, dct, piecewise-linear, constant)");
}

ReferenceChoice reference_from_string(const std::string& text) {
  for (ReferenceChoice r : {ReferenceChoice::None, ReferenceChoice::Exact,
                            ReferenceChoice::Collocation, ReferenceChoice::MonteCarlo}) {
    if (to_string(r) == text) return r;
  }
  throw ConfigError("reference.kind: unknown reference '" + text +
                    "' (none, exact, collocation, monte-carlo)");
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(ReferenceChoice choice) {
  switch (choice) {
    case ReferenceChoice::None: return "none";
    case ReferenceChoice::Exact: return "exact";
    case ReferenceChoice::Collocation: return "collocation";
    case ReferenceChoice::MonteCarlo: return "monte-carlo";
  }
  return "none";
}

LevelSweep parse_level_sweep(const std::string& text) {
  const auto dots = text.find("..");
  LevelSweep s;
  if (dots == std::string::npos) {
    s.first = s.last = to_integer<int>("level_sweep", text);
  } else {
    s.first = to_integer<int>("level_sweep", text.substr(0, dots));
    s.last = to_integer<int>("level_sweep", text.substr(dots + 2));
  }
  if (s.first < 0 || s.last > kMaxLevel || s.first > s.last) {
    throw ConfigError("level_sweep: need 0 <= J0 <= J1 <= " + std::to_string(kMaxLevel) +
                      ", got '" + text + "'");
  }
  return s;
}

HaarTypeBasis make_basis(const BasisConfig& config, std::optional<int> level) {
  const std::optional<int> size = level ? std::nullopt : config.size;
  if (!level) level = config.level;
  switch (config.kind) {
    case BasisKind::ClassicalHaar:
      if (!level) throw ConfigError("basis.level: required for the haar basis");
      return build_classical_haar(*level);
    case BasisKind::CanonicalHaar:
    case BasisKind::Dct: {
      if (!size && !level) throw ConfigError("basis.level: level or size required");
      const int n = size ? *size : 1 << (*level + 1);
      return config.kind == BasisKind::Dct ? build_dct(n) : build_canonical_haar(n);
    }
    case BasisKind::PiecewiseLinear:
      if (!size && !level) throw ConfigError("basis.level: level or size required");
      return build_piecewise_linear(size ? *size : 1 << *level);
    case BasisKind::Constant:
      return build_constant();
    case BasisKind::Custom:
      break;
  }
  throw ConfigError("basis.kind: custom bases cannot be configured from text");
}

void validate(const RunConfig& c) {
  Problem preset;
  try {
    preset = make_preset(c.model);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  if (c.grid.dim != preset.grid.dim) throw ConfigError("grid: dimension does not match the model");
  if (c.grid.nx < 8) throw ConfigError("grid.nx: need at least 8 cells");
  if (c.grid.dim == 2 && c.grid.ny < 8) throw ConfigError("grid.ny: need at least 8 cells");
  if (c.grid.dim == 1 && c.grid.ny != 1) throw ConfigError("grid.ny: one-dimensional model");
  try {
    c.grid.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  if (!(c.t_final >= 0.0) || !std::isfinite(c.t_final)) {
    throw ConfigError("t_final: must be non-negative");
  }
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) throw ConfigError("cfl: must lie in (0, 1)");
  if (!(c.cweno.epsilon > 0.0)) throw ConfigError("cweno.eps: must be positive");
  if (!(c.cweno.power >= 1.0)) throw ConfigError("cweno.power: must be at least 1");
  if (c.output_stride < 0) throw ConfigError("output.stride: must be non-negative");
  if (c.output_dir.empty()) throw ConfigError("output.dir: must not be empty");
  if (c.threads < 1) throw ConfigError("threads: must be at least 1");
  if (c.reference.cells < 1) throw ConfigError("reference.cells: must be at least 1");
  if (c.reference.refinement < 1) throw ConfigError("reference.refinement: must be at least 1");
  if (c.reference.samples < 1) throw ConfigError("reference.samples: must be at least 1");
  if (c.reference.kind == ReferenceChoice::Exact && c.model != "scalar-oleinik") {
    throw ConfigError("reference.kind: the exact reference exists only for scalar-oleinik");
  }

  if (c.basis.kind == BasisKind::ClassicalHaar && c.basis.size) {
    throw ConfigError("basis.size: the haar basis takes a level");
  }
  if (c.basis.level && (*c.basis.level < 0 || *c.basis.level > kMaxLevel)) {
    throw ConfigError("basis.level: must lie in [0, " + std::to_string(kMaxLevel) + "]");
  }
  if (c.basis.size && *c.basis.size < 1) throw ConfigError("basis.size: must be positive");
  if (c.level_sweep) {
    if (c.level_sweep->first < 0 || c.level_sweep->last > kMaxLevel ||
        c.level_sweep->first > c.level_sweep->last) {
      throw ConfigError("level_sweep: need 0 <= J0 <= J1 <= " + std::to_string(kMaxLevel));
    }
    if (c.basis.kind == BasisKind::Constant) {
      throw ConfigError("level_sweep: the constant basis has no levels");
    }
    if (c.reference.kind != ReferenceChoice::Exact &&
        c.reference.kind != ReferenceChoice::Collocation) {
      throw ConfigError("level_sweep: needs reference.kind exact or collocation");
    }
    return;
  }
  try {
    make_basis(c.basis);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("basis: ") + e.what());
  }
}

RunConfig parse_config(const std::string& text) {
  Entries e = flatten(text);
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = e.find(key);
    return it == e.end() ? nullptr : &it->second;
  };

  RunConfig c;
  const std::string* model = get("model");
  if (!model) throw ConfigError("model: required");
  c.model = *model;
  Problem preset;
  try {
    preset = make_preset(c.model);
  } catch (const ConfigError& err) {
    throw ConfigError(std::string("model: ") + err.what());
  }
  c.grid = preset.grid;
  c.t_final = preset.t_final;

  if (auto v = get("t_final")) c.t_final = to_double("t_final", *v);
  if (auto v = get("cfl")) c.cfl = to_double("cfl", *v);
  if (auto v = get("seed")) c.seed = to_integer<std::uint64_t>("seed", *v);
  if (auto v = get("threads")) c.threads = to_integer<int>("threads", *v);
  if (auto v = get("level_sweep")) c.level_sweep = parse_level_sweep(*v);

  if (auto v = get("basis.kind")) c.basis.kind = basis_kind_from_string(*v);
  if (auto v = get("basis.level")) c.basis.level = to_integer<int>("basis.level", *v);
  if (auto v = get("basis.size")) c.basis.size = to_integer<int>("basis.size", *v);

  if (auto v = get("grid.nx")) c.grid.nx = to_integer<int>("grid.nx", *v);
  if (auto v = get("grid.ny")) c.grid.ny = to_integer<int>("grid.ny", *v);
  if (auto v = get("grid.x_min")) c.grid.x_min = to_double("grid.x_min", *v);
  if (auto v = get("grid.x_max")) c.grid.x_max = to_double("grid.x_max", *v);
  if (auto v = get("grid.y_min")) c.grid.y_min = to_double("grid.y_min", *v);
  if (auto v = get("grid.y_max")) c.grid.y_max = to_double("grid.y_max", *v);
  if (c.grid.dim == 1) {
    for (const char* key : {"grid.y_min", "grid.y_max"}) {
      if (get(key)) throw ConfigError(std::string(key) + ": one-dimensional model");
    }
  }
  if (auto v = get("grid.boundary")) {
    try {
      c.grid.boundary = boundary_from_string(*v);
    } catch (const ConfigError& err) {
      throw ConfigError(std::string("grid.boundary: ") + err.what());
    }
  }

  if (auto v = get("cweno.eps")) c.cweno.epsilon = to_double("cweno.eps", *v);
  if (auto v = get("cweno.power")) c.cweno.power = to_double("cweno.power", *v);
  if (auto v = get("output.stride")) c.output_stride = to_integer<int>("output.stride", *v);
  if (auto v = get("output.dir")) c.output_dir = *v;

  if (auto v = get("reference.kind")) c.reference.kind = reference_from_string(*v);
  if (auto v = get("reference.cells")) c.reference.cells = to_integer<int>("reference.cells", *v);
  if (auto v = get("reference.refinement")) {
    c.reference.refinement = to_integer<int>("reference.refinement", *v);
  }
  if (auto v = get("reference.samples")) {
    c.reference.samples = to_integer<int>("reference.samples", *v);
  }

  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "model = " << c.model << "\n"
      << "t_final = " << number(c.t_final) << "\n"
      << "cfl = " << number(c.cfl) << "\n"
      << "seed = " << c.seed << "\n"
      << "threads = " << c.threads << "\n";
  if (c.level_sweep) {
    out << "level_sweep = " << c.level_sweep->first << ".." << c.level_sweep->last << "\n";
  }

  out << "\n[basis]\nkind = " << to_string(c.basis.kind) << "\n";
  if (c.basis.level) out << "level = " << *c.basis.level << "\n";
  if (c.basis.size) out << "size = " << *c.basis.size << "\n";

  out << "\n[grid]\nnx = " << c.grid.nx << "\n";
  if (c.grid.dim == 2) out << "ny = " << c.grid.ny << "\n";
  out << "x_min = " << number(c.grid.x_min) << "\n"
      << "x_max = " << number(c.grid.x_max) << "\n";
  if (c.grid.dim == 2) {
    out << "y_min = " << number(c.grid.y_min) << "\n"
        << "y_max = " << number(c.grid.y_max) << "\n";
  }
  out << "boundary = " << to_string(c.grid.boundary) << "\n";

  out << "\n[cweno]\neps = " << number(c.cweno.epsilon) << "\n"
      << "power = " << number(c.cweno.power) << "\n";
  out << "\n[output]\nstride = " << c.output_stride << "\n"
      << "dir = " << c.output_dir << "\n";
  out << "\n[reference]\nkind = " << to_string(c.reference.kind) << "\n"
      << "cells = " << c.reference.cells << "\n"
      << "refinement = " << c.reference.refinement << "\n"
      << "samples = " << c.reference.samples << "\n";
  return out.str();
}

}  // namespace hsg
