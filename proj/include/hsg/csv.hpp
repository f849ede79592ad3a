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

#ifndef HSG_CSV_HPP
#define HSG_CSV_HPP

#include "hsg/field.hpp"
#include "hsg/reference.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hsg {

enum class ValueKind { Mode, Mean, Std };

std::string to_string(ValueKind kind);

/// Formats with 17 significant digits ("%.17g").
std::string format_number(double value);

/// Header `t,x[,y],component,kind,index,value`, then one `mode` row per cell,
/// component and mode of every snapshot. Within a snapshot rows run y-major,
/// then x, then component, then index. `dim` selects the header when the
/// list is empty; otherwise it must match the snapshots.
void write_modes_csv(std::ostream& out, int dim, const std::vector<GpcField>& snapshots);

/// Same layout with a `mean` and a `std` row (index 0) per cell and component.
/// Each pair holds the single-mode fields returned by mean_std.
void write_statistics_csv(std::ostream& out, int dim,
                          const std::vector<std::pair<GpcField, GpcField>>& snapshots);

/// Header `x,component,min,max,mean`, rows x-major.
void write_envelope_csv(std::ostream& out, const MonteCarloEnvelope& envelope);

/// Header `t,x,component,kind,index,value`: mean and std of a field along
/// y = 0, as returned by profile_along_y0.
void write_profile_csv(std::ostream& out, const GpcField& mean, const GpcField& std);

/// Header `x[,y],xi,component,value`: the reference at every cell centre of
/// `grid` and every xi in `xi`, rows y-major, then x, then xi, then component.
void write_reference_csv(std::ostream& out, const ReferenceField& reference, const Grid& grid,
                         const std::vector<double>& xi);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::string& path, const std::string& text);

struct CsvRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  int component = 0;
  ValueKind kind = ValueKind::Mode;
  int index = 0;
  double value = 0.0;
};

/// Reads a file written by write_modes_csv or write_statistics_csv. Throws
/// IoError naming the line on malformed input.
std::vector<CsvRow> read_field_csv(std::istream& in);
std::vector<CsvRow> read_field_csv_file(const std::string& path);

/// Rebuilds the modes of the latest snapshot in `rows` on `grid`. Throws
/// InvalidArgument when the rows do not cover exactly the cell centres of
/// the grid with the given component and mode counts.
GpcField field_from_rows(const std::vector<CsvRow>& rows, const Grid& grid, int components,
                         int modes);

}  // namespace hsg

#endif  // HSG_CSV_HPP
