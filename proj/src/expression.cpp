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

#include "hsg/expression.hpp"

#include "hsg/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string_view>

namespace hsg {

namespace {

enum Op {
  kConst, kX, kY, kXi,
  kAdd, kSub, kMul, kDiv, kPow, kNeg,
  kLt, kLe, kGt, kGe,
  kSin, kCos, kTan, kExp, kLog, kSqrt, kAbs, kSign, kTanh,
  kMin, kMax,
};

struct Function {
  std::string_view name;
  Op op;
  int arity;
};

constexpr Function kFunctions[] = {
    {"sin", kSin, 1},   {"cos", kCos, 1},   {"tan", kTan, 1},   {"exp", kExp, 1},
    {"log", kLog, 1},   {"sqrt", kSqrt, 1}, {"abs", kAbs, 1},   {"sign", kSign, 1},
    {"tanh", kTanh, 1}, {"min", kMin, 2},   {"max", kMax, 2},
};

class Parser {
 public:
  Parser(const std::string& text, std::vector<Expression::Node>& nodes)
      : text_(text), nodes_(nodes) {}

  int parse() {
    const int root = comparison();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }

  void expect(char c) {
    if (!accept(std::string_view(&c, 1))) fail(std::string("expected '") + c + "'");
  }

  int add(Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
    nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int comparison() {
    int lhs = sum();
    // Two-character operators first so "<=" is not read as "<".
    if (accept("<=")) return add(kLe, lhs, sum());
    if (accept(">=")) return add(kGe, lhs, sum());
    if (accept("<")) return add(kLt, lhs, sum());
    if (accept(">")) return add(kGt, lhs, sum());
    return lhs;
  }

  int sum() {
    int lhs = product();
    for (;;) {
      if (accept("+")) {
        lhs = add(kAdd, lhs, product());
      } else if (accept("-")) {
        lhs = add(kSub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  int product() {
    int lhs = unary();
    for (;;) {
      if (accept("*")) {
        lhs = add(kMul, lhs, unary());
      } else if (accept("/")) {
        lhs = add(kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept("-")) return add(kNeg, unary());
    if (accept("+")) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    if (accept("^")) return add(kPow, base, unary());
    return base;
  }

  int primary() {
    skip();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = comparison();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      auto [end, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
      if (ec != std::errc()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return add(kConst, -1, -1, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = text_.substr(start, pos_ - start);
      if (name == "x") return add(kX);
      if (name == "y") return add(kY);
      if (name == "xi") return add(kXi);
      if (name == "pi") return add(kConst, -1, -1, std::numbers::pi);
      for (const Function& f : kFunctions) {
        if (f.name != name) continue;
        expect('(');
        const int a = comparison();
        int b = -1;
        if (f.arity == 2) {
          expect(',');
          b = comparison();
        }
        expect(')');
        return add(f.op, a, b);
      }
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  std::vector<Expression::Node>& nodes_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text, e.nodes_).parse();
  return e;
}

double Expression::operator()(double x, double y, double xi) const {
  return eval(root_, x, y, xi);
}

double Expression::eval(int index, double x, double y, double xi) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  auto a = [&] { return eval(n.lhs, x, y, xi); };
  auto b = [&] { return eval(n.rhs, x, y, xi); };
  switch (static_cast<Op>(n.op)) {
    case kConst: return n.value;
    case kX: return x;
    case kY: return y;
    case kXi: return xi;
    case kAdd: return a() + b();
    case kSub: return a() - b();
    case kMul: return a() * b();
    case kDiv: return a() / b();
    case kPow: return std::pow(a(), b());
    case kNeg: return -a();
    case kLt: return a() < b() ? 1.0 : 0.0;
    case kLe: return a() <= b() ? 1.0 : 0.0;
    case kGt: return a() > b() ? 1.0 : 0.0;
    case kGe: return a() >= b() ? 1.0 : 0.0;
    case kSin: return std::sin(a());
    case kCos: return std::cos(a());
    case kTan: return std::tan(a());
    case kExp: return std::exp(a());
    case kLog: return std::log(a());
    case kSqrt: return std::sqrt(a());
    case kAbs: return std::abs(a());
    case kSign: {
      const double v = a();
      return static_cast<double>((v > 0.0) - (v < 0.0));
    }
    case kTanh: return std::tanh(a());
    case kMin: return std::min(a(), b());
    case kMax: return std::max(a(), b());
  }
  return 0.0;
}

}  // namespace hsg
