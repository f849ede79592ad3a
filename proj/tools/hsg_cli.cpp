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

// Command-line front end. Talks to the library through the C interface only.

#include "hsg/hsg.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 1;

int exit_code(hsg_status s) {
  switch (s) {
    case HSG_OK: return 0;
    case HSG_ERR_INVALID_ARGUMENT:
    case HSG_ERR_CONFIG: return kExitConfig;
    case HSG_ERR_SOLVER:
    case HSG_ERR_ADMISSIBILITY: return kExitSolver;
    case HSG_ERR_IO: return kExitIo;
    case HSG_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

// Thrown to unwind to main with the status of a failed library call.
struct Failure {
  hsg_status status;
};

void check(hsg_status s) {
  if (s == HSG_OK) return;
  std::fprintf(stderr, "hsg: %s: %s\n", hsg_status_name(s), hsg_last_error());
  throw Failure{s};
}

struct ConfigDeleter {
  void operator()(hsg_config* c) const { hsg_config_free(c); }
};
struct ResultDeleter {
  void operator()(hsg_result* r) const { hsg_result_free(r); }
};
using ConfigPtr = std::unique_ptr<hsg_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<hsg_result, ResultDeleter>;

struct Options {
  std::string config;
  std::string out;
  std::string sweep;
  std::uint64_t seed = 0;
  bool has_seed = false;
  int threads = 0;
  std::vector<std::string> expressions;
  std::string field;
};

ConfigPtr load(const Options& o, bool overrides) {
  hsg_config* raw = nullptr;
  check(hsg_config_load(o.config.c_str(), &raw));
  ConfigPtr c(raw);
  if (!o.out.empty()) check(hsg_config_set_output_dir(c.get(), o.out.c_str()));
  if (overrides) {
    if (o.has_seed) check(hsg_config_set_seed(c.get(), o.seed));
    if (o.threads > 0) check(hsg_config_set_threads(c.get(), o.threads));
  }
  return c;
}

void run(const Options& o) {
  ConfigPtr c = load(o, true);
  if (!o.sweep.empty()) check(hsg_config_set_level_sweep(c.get(), o.sweep.c_str()));
  hsg_result* raw = nullptr;
  check(hsg_run(c.get(), &raw));
  ResultPtr r(raw);
  std::printf("output: %s\n", hsg_config_output_dir(c.get()));
  for (int i = 0; i < hsg_result_members(r.get()); ++i) {
    hsg_member_info m{};
    check(hsg_result_member(r.get(), i, &m));
    if (m.level >= 0) std::printf("level %d: ", m.level);
    std::printf("%d modes, %d steps, %.2f s", m.basis_size, m.steps, m.seconds);
    if (std::isfinite(m.min_admissible)) std::printf(", min admissible %.6g", m.min_admissible);
    for (int c2 = 0; c2 < m.components; ++c2) {
      double mse = 0.0, l1 = 0.0;
      check(hsg_result_error(r.get(), i, c2, &mse, &l1));
      std::printf(", mse[%d] %.6e", c2, mse);
    }
    std::printf("\n");
  }
  if (const int f = hsg_result_reference_failures(r.get()); f > 0) {
    std::fprintf(stderr, "hsg: warning: %d Monte Carlo samples failed and were excluded\n", f);
  }
}

void basis(const Options& o) {
  ConfigPtr c = load(o, false);
  const std::string out = hsg_config_output_dir(c.get());
  if (o.sweep.empty()) {
    check(hsg_dump_basis(c.get(), -1, out.c_str()));
    return;
  }
  int first = 0, last = 0;
  check(hsg_parse_level_sweep(o.sweep.c_str(), &first, &last));
  for (int j = first; j <= last; ++j) {
    const std::string dir = out + "/level-" + std::to_string(j);
    check(hsg_dump_basis(c.get(), j, dir.c_str()));
  }
}

void project(const Options& o) {
  ConfigPtr c = load(o, false);
  std::vector<const char*> texts;
  for (const std::string& e : o.expressions) texts.push_back(e.c_str());
  check(hsg_project(c.get(), texts.data(), static_cast<int>(texts.size()),
                    hsg_config_output_dir(c.get())));
}

void reference(const Options& o) {
  ConfigPtr c = load(o, true);
  check(hsg_write_reference(c.get(), hsg_config_output_dir(c.get())));
}

void mse(const Options& o) {
  ConfigPtr c = load(o, true);
  int components = 0;
  check(hsg_mse_from_csv(c.get(), o.field.c_str(), nullptr, nullptr, 0, &components));
  std::vector<double> m(static_cast<std::size_t>(components));
  std::vector<double> l1(m.size());
  check(hsg_mse_from_csv(c.get(), o.field.c_str(), m.data(), l1.data(), components,
                         &components));
  std::printf("component,mse,l1\n");
  for (int i = 0; i < components; ++i) {
    std::printf("%d,%.17g,%.17g\n", i, m[static_cast<std::size_t>(i)],
                l1[static_cast<std::size_t>(i)]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrusive stochastic Galerkin solver for hyperbolic systems"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration file")->required();
    sub->add_option("--out", o.out, "Output directory (overrides output.dir)");
  };
  auto tuning = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed of the Monte Carlo sampler")
        ->each([&](const std::string&) { o.has_seed = true; });
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Run a full experiment");
  common(run_cmd);
  tuning(run_cmd);
  run_cmd->add_option("--level-sweep", o.sweep, "Basis levels J0..J1");

  CLI::App* basis_cmd = app.add_subcommand("basis", "Dump Haar-type matrices and triple tensors");
  common(basis_cmd);
  basis_cmd->add_option("--level-sweep", o.sweep, "Dump levels J0..J1");

  CLI::App* project_cmd = app.add_subcommand("project", "Project initial-data expressions");
  common(project_cmd);
  project_cmd->add_option("expressions", o.expressions, "One expression in x, y, xi per component")
      ->required();

  CLI::App* ref_cmd = app.add_subcommand("reference", "Build and dump the configured reference");
  common(ref_cmd);
  tuning(ref_cmd);

  CLI::App* mse_cmd = app.add_subcommand("mse", "Compare a modes CSV with the reference");
  common(mse_cmd);
  tuning(mse_cmd);
  mse_cmd->add_option("field", o.field, "modes.csv written by run or project")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) run(o);
    if (basis_cmd->parsed()) basis(o);
    if (project_cmd->parsed()) project(o);
    if (ref_cmd->parsed()) reference(o);
    if (mse_cmd->parsed()) mse(o);
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return 0;
}
