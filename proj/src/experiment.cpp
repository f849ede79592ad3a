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

#include "hsg/experiment.hpp"

#include "hsg/csv.hpp"
#include "hsg/error.hpp"
#include "hsg/expression.hpp"
#include "hsg/presets.hpp"
#include "hsg/reference.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <sstream>

namespace hsg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

Problem problem_of(const RunConfig& config) {
  Problem p = make_preset(config.model);
  p.grid = config.grid;
  p.t_final = config.t_final;
  return p;
}

SchemeOptions options_of(const RunConfig& config) {
  SchemeOptions o;
  o.cfl = config.cfl;
  o.cweno = config.cweno;
  o.threads = config.threads;
  return o;
}

void write_fields(const std::string& dir, const std::vector<GpcField>& snapshots,
                  const GalerkinTensor& tensor, int dim) {
  std::ostringstream modes;
  write_modes_csv(modes, dim, snapshots);
  write_text_file(join(dir, "modes.csv"), modes.str());

  std::vector<std::pair<GpcField, GpcField>> stats;
  stats.reserve(snapshots.size());
  for (const GpcField& f : snapshots) stats.push_back(mean_std(f, tensor));
  std::ostringstream text;
  write_statistics_csv(text, dim, stats);
  write_text_file(join(dir, "statistics.csv"), text.str());

  if (dim == 2 && !stats.empty()) {
    std::ostringstream profile;
    write_profile_csv(profile, stats.back().first, stats.back().second);
    write_text_file(join(dir, "profile.csv"), profile.str());
  }
}

std::unique_ptr<ReferenceField> build_reference(const RunConfig& config, double t) {
  switch (config.reference.kind) {
    case ReferenceChoice::Exact:
      return std::make_unique<ExactScalarReference>(t);
    case ReferenceChoice::Collocation:
      return std::make_unique<CollocationReference>(problem_of(config), config.reference.cells,
                                                    config.reference.refinement, t,
                                                    options_of(config));
    default:
      return nullptr;
  }
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json manifest(const RunConfig& config, const ExperimentResult& result,
                        const std::string& error) {
  nlohmann::json j;
  j["config"] = render_config(config);
  j["model"] = config.model;
  j["basis"] = to_string(config.basis.kind);
  j["t_final"] = config.t_final;
  j["threads"] = config.threads;
  j["seed"] = config.seed;
  j["reference"] = {{"kind", to_string(config.reference.kind)},
                    {"seconds", result.reference_seconds},
                    {"failures", result.reference_failures}};
  nlohmann::json members = nlohmann::json::array();
  for (const MemberResult& m : result.members) {
    nlohmann::json e;
    e["level"] = m.level ? nlohmann::json(*m.level) : nlohmann::json(nullptr);
    e["basis_size"] = m.basis_size;
    e["directory"] = m.directory;
    e["steps"] = m.stats.steps;
    e["min_admissible"] = number_or_null(m.stats.min_admissible);
    e["seconds"] = m.seconds;
    e["mse"] = m.mse;
    e["l1"] = m.l1;
    members.push_back(std::move(e));
  }
  j["members"] = std::move(members);
  j["total_seconds"] = result.total_seconds;
  j["status"] = error.empty() ? "ok" : "error";
  if (!error.empty()) j["error"] = error;
  return j;
}

MemberResult run_member(const RunConfig& config, const Problem& problem,
                        const HaarTypeBasis& basis, const std::string& dir,
                        const ReferenceField* reference) {
  const auto start = Clock::now();
  MemberResult r;
  r.basis_size = basis.size();
  r.directory = dir;

  auto tensor = std::make_shared<const GalerkinTensor>(basis);
  const std::unique_ptr<Model> model = problem.model(tensor, std::nullopt);
  GpcField field = initial_field(problem, *tensor);
  std::vector<GpcField> snapshots{field};
  if (config.t_final > 0.0) {
    const int stride = config.output_stride;
    StepCallback keep;
    if (stride > 0) {
      keep = [&](const GpcField& f, int step) {
        if (step % stride == 0) snapshots.push_back(f);
      };
    }
    r.stats = advance(*model, field, config.t_final, options_of(config), keep);
    if (snapshots.back().time() != field.time()) snapshots.push_back(field);
  }
  write_fields(dir, snapshots, *tensor, problem.grid.dim);

  if (reference) {
    for (int c = 0; c < problem.components; ++c) {
      r.mse.push_back(mse(field, *tensor, *reference, c));
      r.l1.push_back(l1_distance(field, *tensor, *reference, c));
    }
  }
  r.field = std::move(field);
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  validate(config);
  const auto start = Clock::now();
  const Problem problem = problem_of(config);
  const std::string& out = config.output_dir;
  ExperimentResult result;
  std::string error;
  try {
    std::unique_ptr<ReferenceField> reference;
    if (config.t_final > 0.0) {
      const auto ref_start = Clock::now();
      if (config.reference.kind == ReferenceChoice::MonteCarlo) {
        MonteCarloEnvelope env =
            monte_carlo_reference(problem, config.reference.samples, config.seed,
                                  config.t_final, options_of(config));
        result.reference_failures = env.failures;
        std::ostringstream text;
        write_envelope_csv(text, env);
        write_text_file(join(out, "envelope.csv"), text.str());
        result.envelope = std::move(env);
      } else {
        reference = build_reference(config, config.t_final);
      }
      result.reference_seconds = seconds_since(ref_start);
    }

    if (config.level_sweep) {
      for (int level = config.level_sweep->first; level <= config.level_sweep->last; ++level) {
        MemberResult m = run_member(config, problem, make_basis(config.basis, level),
                                    join(out, "level-" + std::to_string(level)),
                                    reference.get());
        m.level = level;
        result.members.push_back(std::move(m));
      }
    } else {
      result.members.push_back(
          run_member(config, problem, make_basis(config.basis), out, reference.get()));
    }

    if (reference) {
      std::ostringstream table;
      table << "level,size,component,mse,l1\n";
      for (const MemberResult& m : result.members) {
        for (std::size_t c = 0; c < m.mse.size(); ++c) {
          table << (m.level ? std::to_string(*m.level) : std::string()) << ',' << m.basis_size
                << ',' << c << ',' << format_number(m.mse[c]) << ',' << format_number(m.l1[c])
                << '\n';
        }
      }
      write_text_file(join(out, "mse.csv"), table.str());
      result.reference = std::move(reference);
    }
  } catch (const Error& e) {
    error = e.what();
    result.total_seconds = seconds_since(start);
    try {
      write_text_file(join(out, "manifest.json"), manifest(config, result, error).dump(2) + "\n");
    } catch (const IoError&) {
      // The original failure is the one worth reporting.
    }
    throw;
  }
  result.total_seconds = seconds_since(start);
  write_text_file(join(out, "manifest.json"), manifest(config, result, error).dump(2) + "\n");
  return result;
}

void dump_basis(const BasisConfig& config, const std::string& out_dir, std::optional<int> level) {
  const GalerkinTensor tensor(make_basis(config, level));
  const Eigen::MatrixXd& h = tensor.basis().matrix();
  std::ostringstream matrix;
  matrix << "k,l,value\n";
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    for (Eigen::Index l = 0; l < h.cols(); ++l) {
      matrix << k << ',' << l << ',' << format_number(h(k, l)) << '\n';
    }
  }
  write_text_file(join(out_dir, "basis.csv"), matrix.str());

  std::ostringstream triples;
  triples << "k,i,j,value\n";
  for (int k = 0; k < tensor.size(); ++k) {
    // Row-major walk so the file order does not depend on the storage order.
    const Eigen::MatrixXd m(tensor.triple(k));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m(i, j) != 0.0) {
          triples << k << ',' << i << ',' << j << ',' << format_number(m(i, j)) << '\n';
        }
      }
    }
  }
  write_text_file(join(out_dir, "triples.csv"), triples.str());
}

void project_expressions(const RunConfig& config, const std::vector<std::string>& expressions,
                         const std::string& out_dir) {
  if (expressions.empty() || expressions.size() > 4) {
    throw InvalidArgument("project needs one to four expressions");
  }
  std::vector<Expression> parsed;
  for (const std::string& text : expressions) parsed.push_back(Expression::parse(text));

  Problem p = problem_of(config);
  p.components = static_cast<int>(parsed.size());
  p.initial = [&](double x, double y, double xi, double* out) {
    for (std::size_t c = 0; c < parsed.size(); ++c) out[c] = parsed[c](x, y, xi);
  };
  p.xi_breaks = {};
  const GalerkinTensor tensor(make_basis(config.basis));
  write_fields(out_dir, {initial_field(p, tensor)}, tensor, p.grid.dim);
}

void write_reference(const RunConfig& config, const std::string& out_dir) {
  validate(config);
  const double t = config.t_final;
  if (config.reference.kind == ReferenceChoice::None) {
    throw ConfigError("reference.kind: no reference configured");
  }
  if (config.reference.kind == ReferenceChoice::MonteCarlo) {
    const MonteCarloEnvelope env = monte_carlo_reference(
        problem_of(config), config.reference.samples, config.seed, t, options_of(config));
    std::ostringstream text;
    write_envelope_csv(text, env);
    write_text_file(join(out_dir, "envelope.csv"), text.str());
    return;
  }
  const std::unique_ptr<ReferenceField> ref = build_reference(config, t);
  std::vector<double> xi;
  const int cells = config.reference.cells;
  for (int l = 0; l < cells; ++l) xi.push_back((l + 0.5) / cells);
  Grid grid = config.grid;
  if (auto* colloc = dynamic_cast<const CollocationReference*>(ref.get())) grid = colloc->grid();
  std::ostringstream text;
  write_reference_csv(text, *ref, grid, xi);
  write_text_file(join(out_dir, "reference.csv"), text.str());
}

std::vector<MseRow> mse_from_csv(const RunConfig& config, const std::string& csv_path) {
  validate(config);
  if (config.reference.kind != ReferenceChoice::Exact &&
      config.reference.kind != ReferenceChoice::Collocation) {
    throw ConfigError("reference.kind: mse needs an exact or collocation reference");
  }
  if (config.level_sweep) throw ConfigError("level_sweep: mse compares a single basis");
  const GalerkinTensor tensor(make_basis(config.basis));
  const int components = make_preset(config.model).components;
  const GpcField field =
      field_from_rows(read_field_csv_file(csv_path), config.grid, components, tensor.size());
  const std::unique_ptr<ReferenceField> ref = build_reference(config, field.time());
  std::vector<MseRow> rows;
  for (int c = 0; c < components; ++c) {
    rows.push_back({c, mse(field, tensor, *ref, c), l1_distance(field, tensor, *ref, c)});
  }
  return rows;
}

}  // namespace hsg
