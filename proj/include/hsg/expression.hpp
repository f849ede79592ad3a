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

#ifndef HSG_EXPRESSION_HPP
#define HSG_EXPRESSION_HPP

#include <string>
#include <vector>

namespace hsg {

/// Arithmetic expression in x, y, xi for initial data given on the command
/// line. Supports + - * / ^ (right associative), unary signs, comparisons
/// < <= > >= (1 or 0), the constant pi and the functions sin, cos, tan, exp,
/// log, sqrt, abs, sign, tanh, min, max.
class Expression {
 public:
  /// Throws ConfigError with the 1-based column of the first offending token.
  static Expression parse(const std::string& text);

  double operator()(double x, double y, double xi) const;

  const std::string& text() const noexcept { return text_; }

  struct Node {
    int op = 0;
    double value = 0.0;
    int lhs = -1;
    int rhs = -1;
  };

 private:
  Expression() = default;

  double eval(int node, double x, double y, double xi) const;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace hsg

#endif  // HSG_EXPRESSION_HPP
