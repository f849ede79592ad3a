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

#ifndef HSG_FIELD_HPP
#define HSG_FIELD_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hsg {

enum class Boundary { Transmissive, Periodic };

std::string to_string(Boundary boundary);
Boundary boundary_from_string(const std::string& text);

/// Uniform Cartesian grid of cell averages. One-dimensional grids have ny = 1
/// and ignore the y bounds.
struct Grid {
  int dim = 1;
  int nx = 0;
  int ny = 1;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  Boundary boundary = Boundary::Transmissive;

  static constexpr int kGhost = 2;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return dim == 2 ? (y_max - y_min) / ny : 1.0; }
  double x_center(int i) const { return x_min + (i + 0.5) * dx(); }
  double y_center(int j) const { return dim == 2 ? y_min + (j + 0.5) * dy() : 0.0; }
  int cells() const { return nx * (dim == 2 ? ny : 1); }

  /// Throws InvalidArgument for empty or inverted extents.
  void validate() const;

  bool operator==(const Grid&) const = default;
};

/// Solver state: per cell, per conserved component, the gPC modes. Storage is
/// cell-major (cell = j * nx + i), then component, then mode.
class GpcField {
 public:
  GpcField() = default;
  GpcField(Grid grid, int components, int modes);

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  int modes() const noexcept { return modes_; }
  int stride() const noexcept { return components_ * modes_; }

  double* cell(int index) { return data_.data() + static_cast<std::size_t>(index) * stride(); }
  const double* cell(int index) const {
    return data_.data() + static_cast<std::size_t>(index) * stride();
  }
  double* cell(int i, int j) { return cell(j * grid_.nx + i); }
  const double* cell(int i, int j) const { return cell(j * grid_.nx + i); }

  Eigen::Map<Eigen::VectorXd> state(int index) {
    return Eigen::Map<Eigen::VectorXd>(cell(index), stride());
  }
  Eigen::Map<const Eigen::VectorXd> state(int index) const {
    return Eigen::Map<const Eigen::VectorXd>(cell(index), stride());
  }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

 private:
  Grid grid_;
  int components_ = 0;
  int modes_ = 0;
  std::vector<double> data_;
  double time_ = 0.0;
};

}  // namespace hsg

#endif  // HSG_FIELD_HPP
