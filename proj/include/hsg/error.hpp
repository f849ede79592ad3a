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

#ifndef HSG_ERROR_HPP
#define HSG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hsg {

enum class ErrorKind {
  InvalidArgument,
  Config,
  Admissibility,
  Solver,
  Io,
};

/// Base exception of the library. The kind maps one-to-one onto the C API
/// status codes and the CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::Config, what) {}
};

/// Raised when a state leaves the admissible set of its model (e.g. a density
/// expansion whose Galerkin matrix is no longer positive definite).
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& what, int cell)
      : Error(ErrorKind::Admissibility, what), cell_(cell) {}

  /// Offending stochastic cell (spectral index), -1 if unknown.
  int cell() const noexcept { return cell_; }

 private:
  int cell_;
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what)
      : Error(ErrorKind::Solver, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace hsg

#endif  // HSG_ERROR_HPP
