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

#include "hsg/csv.hpp"

#include "hsg/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hsg {

namespace {

const char* header(int dim) {
  return dim == 2 ? "t,x,y,component,kind,index,value\n" : "t,x,component,kind,index,value\n";
}

void check_dim(const GpcField& f, int dim) {
  if (f.grid().dim != dim) throw InvalidArgument("snapshot dimension does not match the header");
}

// Appends "t,x[,y]," for one cell.
void cell_prefix(std::string& line, double t, const Grid& g, int i, int j) {
  line += format_number(t);
  line += ',';
  line += format_number(g.x_center(i));
  line += ',';
  if (g.dim == 2) {
    line += format_number(g.y_center(j));
    line += ',';
  }
}

void value_row(std::string& out, const std::string& prefix, int component, ValueKind kind,
               int index, double value) {
  out += prefix;
  out += std::to_string(component);
  out += ',';
  out += to_string(kind);
  out += ',';
  out += std::to_string(index);
  out += ',';
  out += format_number(value);
  out += '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) return cells;
    start = comma + 1;
  }
}

template <typename T>
bool parse(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Mode: return "mode";
    case ValueKind::Mean: return "mean";
    case ValueKind::Std: return "std";
  }
  return "mode";
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_modes_csv(std::ostream& out, int dim, const std::vector<GpcField>& snapshots) {
  out << header(dim);
  std::string block, prefix;
  for (const GpcField& f : snapshots) {
    check_dim(f, dim);
    const Grid& g = f.grid();
    block.clear();
    for (int j = 0; j < (dim == 2 ? g.ny : 1); ++j) {
      for (int i = 0; i < g.nx; ++i) {
        prefix.clear();
        cell_prefix(prefix, f.time(), g, i, j);
        const double* u = f.cell(i, j);
        for (int c = 0; c < f.components(); ++c) {
          for (int k = 0; k < f.modes(); ++k) {
            value_row(block, prefix, c, ValueKind::Mode, k, u[c * f.modes() + k]);
          }
        }
      }
    }
    out << block;
  }
}

void write_statistics_csv(std::ostream& out, int dim,
                          const std::vector<std::pair<GpcField, GpcField>>& snapshots) {
  out << header(dim);
  std::string block, prefix;
  for (const auto& [mean, sd] : snapshots) {
    check_dim(mean, dim);
    check_dim(sd, dim);
    const Grid& g = mean.grid();
    block.clear();
    for (int j = 0; j < (dim == 2 ? g.ny : 1); ++j) {
      for (int i = 0; i < g.nx; ++i) {
        prefix.clear();
        cell_prefix(prefix, mean.time(), g, i, j);
        for (int c = 0; c < mean.components(); ++c) {
          value_row(block, prefix, c, ValueKind::Mean, 0, mean.cell(i, j)[c]);
          value_row(block, prefix, c, ValueKind::Std, 0, sd.cell(i, j)[c]);
        }
      }
    }
    out << block;
  }
}

void write_envelope_csv(std::ostream& out, const MonteCarloEnvelope& env) {
  out << "x,component,min,max,mean\n";
  const std::size_t n = env.x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < env.components; ++c) {
      const std::size_t at = static_cast<std::size_t>(c) * n + i;
      out << format_number(env.x[i]) << ',' << c << ',' << format_number(env.min[at]) << ','
          << format_number(env.max[at]) << ',' << format_number(env.mean[at]) << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, const GpcField& mean, const GpcField& sd) {
  out << "t,x,component,kind,index,value\n";
  const Grid& g = mean.grid();
  std::vector<std::vector<double>> m, s;
  for (int c = 0; c < mean.components(); ++c) {
    m.push_back(profile_along_y0(mean, c));
    s.push_back(profile_along_y0(sd, c));
  }
  std::string block, prefix;
  for (int i = 0; i < g.nx; ++i) {
    prefix = format_number(mean.time()) + ',' + format_number(g.x_center(i)) + ',';
    for (int c = 0; c < mean.components(); ++c) {
      value_row(block, prefix, c, ValueKind::Mean, 0, m[c][i]);
      value_row(block, prefix, c, ValueKind::Std, 0, s[c][i]);
    }
  }
  out << block;
}

void write_reference_csv(std::ostream& out, const ReferenceField& reference, const Grid& grid,
                         const std::vector<double>& xi) {
  out << (grid.dim == 2 ? "x,y,xi,component,value\n" : "x,xi,component,value\n");
  std::string block;
  for (int j = 0; j < (grid.dim == 2 ? grid.ny : 1); ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x_center(i);
      const double y = grid.y_center(j);
      std::string prefix = format_number(x) + ',';
      if (grid.dim == 2) prefix += format_number(y) + ',';
      for (double s : xi) {
        const std::string head = prefix + format_number(s) + ',';
        for (int c = 0; c < reference.components(); ++c) {
          block += head;
          block += std::to_string(c);
          block += ',';
          block += format_number(reference.value(x, y, s, c));
          block += '\n';
        }
      }
    }
    out << block;
    block.clear();
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<CsvRow> read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("line 1: missing header");
  int dim = 0;
  if (line + '\n' == header(1)) {
    dim = 1;
  } else if (line + '\n' == header(2)) {
    dim = 2;
  } else {
    throw IoError("line 1: unexpected header '" + line + "'");
  }

  std::vector<CsvRow> rows;
  const std::size_t columns = dim == 2 ? 7 : 6;
  for (int number = 2; std::getline(in, line); ++number) {
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) {
      throw IoError("line " + std::to_string(number) + ": " + what);
    };
    const std::vector<std::string> cells = split(line);
    if (cells.size() != columns) fail("expected " + std::to_string(columns) + " columns");
    CsvRow r;
    std::size_t at = 0;
    bool ok = parse(cells[at++], r.t) && parse(cells[at++], r.x);
    if (dim == 2) ok = ok && parse(cells[at++], r.y);
    ok = ok && parse(cells[at++], r.component);
    const std::string& kind = cells[at++];
    ok = ok && parse(cells[at++], r.index) && parse(cells[at++], r.value);
    if (!ok) fail("malformed number");
    if (kind == "mode") {
      r.kind = ValueKind::Mode;
    } else if (kind == "mean") {
      r.kind = ValueKind::Mean;
    } else if (kind == "std") {
      r.kind = ValueKind::Std;
    } else {
      fail("unknown kind '" + kind + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<CsvRow> read_field_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  try {
    return read_field_csv(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

GpcField field_from_rows(const std::vector<CsvRow>& rows, const Grid& grid, int components,
                         int modes) {
  double latest = -INFINITY;
  for (const CsvRow& r : rows) {
    if (r.kind == ValueKind::Mode) latest = std::max(latest, r.t);
  }
  GpcField field(grid, components, modes);
  field.set_time(latest);
  std::vector<char> seen(field.data().size(), 0);
  const auto locate = [](double v, double lo, double h, int n, const char* axis) {
    const double s = (v - lo) / h - 0.5;
    const int i = static_cast<int>(std::lround(s));
    if (i < 0 || i >= n || std::abs(s - i) > 1e-6) {
      throw InvalidArgument(std::string(axis) + " = " + format_number(v) +
                            " is not a cell centre of the grid");
    }
    return i;
  };
  for (const CsvRow& r : rows) {
    if (r.kind != ValueKind::Mode || r.t != latest) continue;
    if (r.component < 0 || r.component >= components || r.index < 0 || r.index >= modes) {
      throw InvalidArgument("row component " + std::to_string(r.component) + " / mode " +
                            std::to_string(r.index) + " outside the expected layout");
    }
    const int i = locate(r.x, grid.x_min, grid.dx(), grid.nx, "x");
    const int j = grid.dim == 2 ? locate(r.y, grid.y_min, grid.dy(), grid.ny, "y") : 0;
    const std::size_t at = static_cast<std::size_t>(j * grid.nx + i) * field.stride() +
                           static_cast<std::size_t>(r.component * modes + r.index);
    if (seen[at]) throw InvalidArgument("duplicate row for one cell value");
    seen[at] = 1;
    field.data()[at] = r.value;
  }
  for (char s : seen) {
    if (!s) throw InvalidArgument("rows do not cover every cell, component and mode");
  }
  return field;
}

}  // namespace hsg
