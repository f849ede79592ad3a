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

#include "hsg/field.hpp"

#include "hsg/error.hpp"

namespace hsg {

std::string to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "transmissive";
}

Boundary boundary_from_string(const std::string& text) {
  if (text == "periodic") return Boundary::Periodic;
  if (text == "transmissive") return Boundary::Transmissive;
  throw ConfigError("unknown boundary kind '" + text + "'");
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw InvalidArgument("grid dimension must be 1 or 2");
  if (nx < 1 || (dim == 2 && ny < 1)) throw InvalidArgument("grid needs at least one cell");
  if (!(x_max > x_min) || (dim == 2 && !(y_max > y_min))) {
    throw InvalidArgument("grid bounds must be increasing");
  }
}

GpcField::GpcField(Grid grid, int components, int modes)
    : grid_(grid), components_(components), modes_(modes) {
  if (grid_.dim == 1) grid_.ny = 1;
  grid_.validate();
  if (components < 1 || modes < 1) throw InvalidArgument("field needs components and modes");
  data_.assign(static_cast<std::size_t>(grid_.cells()) * components * modes, 0.0);
}

}  // namespace hsg
