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

#ifndef HSG_EXPERIMENT_HPP
#define HSG_EXPERIMENT_HPP

#include "hsg/config.hpp"
#include "hsg/reference.hpp"
#include "hsg/solver.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hsg {

/// One Galerkin run of an experiment (the only one without a level sweep).
struct MemberResult {
  std::optional<int> level;  // set for level-sweep members
  int basis_size = 0;
  std::string directory;
  AdvanceStats stats;
  double seconds = 0.0;
  /// Per component; empty without an exact or collocation reference.
  std::vector<double> mse;
  std::vector<double> l1;
  GpcField field;  // mode field at the final time
};

struct ExperimentResult {
  std::vector<MemberResult> members;
  double reference_seconds = 0.0;
  int reference_failures = 0;  // Monte Carlo samples that aborted
  std::shared_ptr<const ReferenceField> reference;  // exact or collocation
  std::optional<MonteCarloEnvelope> envelope;
  double total_seconds = 0.0;
};

/// Runs the configured experiment and writes into config.output_dir:
///   modes.csv        mode fields at t0, every output_stride steps and t_final
///   statistics.csv   mean / std fields at the same times
///   profile.csv      final mean / std along y = 0 (2D models)
///   envelope.csv     Monte Carlo min / max / mean along y = 0
///   mse.csv          level, size, component, mse, l1 (exact or collocation
///                    reference)
///   manifest.json    config echo, timings, step counts, admissibility minima
/// With a level sweep every member writes its fields to `level-J/`. A
/// t_final of 0 dumps the initial data only. Solver aborts propagate as
/// SolverError after the manifest records them.
ExperimentResult run_experiment(const RunConfig& config);

/// Writes basis.csv (`k,l,value` of the Haar-type matrix) and triples.csv
/// (`k,i,j,value`, nonzero entries of every triple-product matrix) for the
/// configured basis, or for `level` when given.
void dump_basis(const BasisConfig& basis, const std::string& out_dir,
                std::optional<int> level = std::nullopt);

/// Projects initial data given as one expression per component on the grid
/// and basis of the config; writes modes.csv and statistics.csv.
void project_expressions(const RunConfig& config, const std::vector<std::string>& expressions,
                         const std::string& out_dir);

/// Builds the configured reference at t_final and writes it: reference.csv
/// for exact and collocation references (at the midpoints of
/// reference.cells stochastic cells, on the reference grid), envelope.csv for
/// Monte Carlo.
void write_reference(const RunConfig& config, const std::string& out_dir);

struct MseRow {
  int component = 0;
  double mse = 0.0;
  double l1 = 0.0;
};

/// Reads the latest snapshot of a modes CSV written for `config` and compares
/// it with the configured exact or collocation reference at that time.
std::vector<MseRow> mse_from_csv(const RunConfig& config, const std::string& csv_path);

}  // namespace hsg

#endif  // HSG_EXPERIMENT_HPP
