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

#include "hsg/hsg.h"

#include "hsg/config.hpp"
#include "hsg/error.hpp"
#include "hsg/experiment.hpp"

#include <cstring>
#include <limits>
#include <new>
#include <string>

struct hsg_config {
  hsg::RunConfig config;
};

struct hsg_result {
  hsg::ExperimentResult result;
};

namespace {

thread_local std::string last_error;

hsg_status status_of(hsg::ErrorKind kind) {
  switch (kind) {
    case hsg::ErrorKind::InvalidArgument: return HSG_ERR_INVALID_ARGUMENT;
    case hsg::ErrorKind::Config: return HSG_ERR_CONFIG;
    case hsg::ErrorKind::Admissibility: return HSG_ERR_ADMISSIBILITY;
    case hsg::ErrorKind::Solver: return HSG_ERR_SOLVER;
    case hsg::ErrorKind::Io: return HSG_ERR_IO;
  }
  return HSG_ERR_INTERNAL;
}

template <typename F>
hsg_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return HSG_OK;
  } catch (const hsg::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return HSG_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw hsg::InvalidArgument(what);
}

// Applies a change to a copy, validates it, then commits.
template <typename F>
hsg_status modify(hsg_config* config, F&& change) {
  return guarded([&] {
    require(config != nullptr, "config handle is null");
    hsg::RunConfig copy = config->config;
    change(copy);
    hsg::validate(copy);
    config->config = std::move(copy);
  });
}

}  // namespace

extern "C" {

const char* hsg_version(void) { return "1.0.0"; }

const char* hsg_last_error(void) { return last_error.c_str(); }

const char* hsg_status_name(hsg_status status) {
  switch (status) {
    case HSG_OK: return "ok";
    case HSG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HSG_ERR_CONFIG: return "config error";
    case HSG_ERR_SOLVER: return "solver abort";
    case HSG_ERR_IO: return "I/O error";
    case HSG_ERR_ADMISSIBILITY: return "admissibility lost";
    case HSG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

hsg_status hsg_config_parse(const char* text, hsg_config** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new hsg_config{hsg::parse_config(text)};
  });
}

hsg_status hsg_config_load(const char* path, hsg_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new hsg_config{hsg::load_config(path)};
  });
}

void hsg_config_free(hsg_config* config) { delete config; }

hsg_status hsg_config_set_output_dir(hsg_config* config, const char* dir) {
  return modify(config, [&](hsg::RunConfig& c) {
    require(dir != nullptr, "output directory is null");
    c.output_dir = dir;
  });
}

hsg_status hsg_config_set_seed(hsg_config* config, uint64_t seed) {
  return modify(config, [&](hsg::RunConfig& c) { c.seed = seed; });
}

hsg_status hsg_config_set_threads(hsg_config* config, int threads) {
  return modify(config, [&](hsg::RunConfig& c) { c.threads = threads; });
}

hsg_status hsg_config_set_level_sweep(hsg_config* config, const char* sweep) {
  return modify(config, [&](hsg::RunConfig& c) {
    require(sweep != nullptr, "level sweep is null");
    c.level_sweep = hsg::parse_level_sweep(sweep);
  });
}

hsg_status hsg_config_render(const hsg_config* config, char* buffer, size_t size,
                             size_t* needed) {
  return guarded([&] {
    require(config != nullptr && needed != nullptr, "null argument");
    const std::string text = hsg::render_config(config->config);
    *needed = text.size() + 1;
    if (buffer != nullptr && size >= text.size() + 1) {
      std::memcpy(buffer, text.c_str(), text.size() + 1);
    }
  });
}

const char* hsg_config_output_dir(const hsg_config* config) {
  return config ? config->config.output_dir.c_str() : "";
}

hsg_status hsg_parse_level_sweep(const char* text, int* first, int* last) {
  return guarded([&] {
    require(text != nullptr && first != nullptr && last != nullptr, "null argument");
    const hsg::LevelSweep s = hsg::parse_level_sweep(text);
    *first = s.first;
    *last = s.last;
  });
}

hsg_status hsg_run(const hsg_config* config, hsg_result** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = new hsg_result{hsg::run_experiment(config->config)};
  });
}

void hsg_result_free(hsg_result* result) { delete result; }

int hsg_result_members(const hsg_result* result) {
  return result ? static_cast<int>(result->result.members.size()) : 0;
}

hsg_status hsg_result_member(const hsg_result* result, int index, hsg_member_info* out) {
  return guarded([&] {
    require(result != nullptr && out != nullptr, "null argument");
    require(index >= 0 && index < hsg_result_members(result), "member index out of range");
    const hsg::MemberResult& m = result->result.members[static_cast<std::size_t>(index)];
    out->level = m.level ? *m.level : -1;
    out->basis_size = m.basis_size;
    out->steps = m.stats.steps;
    out->components = static_cast<int>(m.mse.size());
    out->min_admissible = m.stats.min_admissible;
    out->seconds = m.seconds;
  });
}

hsg_status hsg_result_error(const hsg_result* result, int index, int component, double* mse,
                            double* l1) {
  return guarded([&] {
    require(result != nullptr && mse != nullptr && l1 != nullptr, "null argument");
    require(index >= 0 && index < hsg_result_members(result), "member index out of range");
    const hsg::MemberResult& m = result->result.members[static_cast<std::size_t>(index)];
    require(component >= 0 && component < static_cast<int>(m.mse.size()),
            "no error value for this component");
    *mse = m.mse[static_cast<std::size_t>(component)];
    *l1 = m.l1[static_cast<std::size_t>(component)];
  });
}

int hsg_result_reference_failures(const hsg_result* result) {
  return result ? result->result.reference_failures : 0;
}

hsg_status hsg_dump_basis(const hsg_config* config, int level, const char* out_dir) {
  return guarded([&] {
    require(config != nullptr && out_dir != nullptr, "null argument");
    const hsg::RunConfig& c = config->config;
    if (level >= 0) {
      hsg::dump_basis(c.basis, out_dir, level);
    } else if (c.level_sweep) {
      for (int j = c.level_sweep->first; j <= c.level_sweep->last; ++j) {
        hsg::dump_basis(c.basis, std::string(out_dir) + "/level-" + std::to_string(j), j);
      }
    } else {
      hsg::dump_basis(c.basis, out_dir);
    }
  });
}

hsg_status hsg_project(const hsg_config* config, const char* const* expressions, int count,
                       const char* out_dir) {
  return guarded([&] {
    require(config != nullptr && out_dir != nullptr, "null argument");
    require(count >= 0 && (count == 0 || expressions != nullptr), "no expressions");
    std::vector<std::string> texts;
    for (int i = 0; i < count; ++i) {
      require(expressions[i] != nullptr, "expression is null");
      texts.emplace_back(expressions[i]);
    }
    hsg::project_expressions(config->config, texts, out_dir);
  });
}

hsg_status hsg_write_reference(const hsg_config* config, const char* out_dir) {
  return guarded([&] {
    require(config != nullptr && out_dir != nullptr, "null argument");
    hsg::write_reference(config->config, out_dir);
  });
}

hsg_status hsg_mse_from_csv(const hsg_config* config, const char* csv_path, double* mse,
                            double* l1, int capacity, int* components) {
  return guarded([&] {
    require(config != nullptr && csv_path != nullptr && components != nullptr, "null argument");
    const std::vector<hsg::MseRow> rows = hsg::mse_from_csv(config->config, csv_path);
    *components = static_cast<int>(rows.size());
    for (int c = 0; c < *components && c < capacity; ++c) {
      if (mse) mse[c] = rows[static_cast<std::size_t>(c)].mse;
      if (l1) l1[c] = rows[static_cast<std::size_t>(c)].l1;
    }
  });
}

}  // extern "C"
