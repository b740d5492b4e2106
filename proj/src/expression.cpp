/*
 * Copyright (c) 2026 The Bochner Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bochner/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "bochner/error.hpp"
#include "step_data.hpp"

namespace bochner {
namespace {

constexpr int kMaxVariablePower = 8;
constexpr double kMaxConstantPower = 1 << 30;

class Parser {
 public:
  Parser(std::string_view text, bool allow_index, std::vector<Expression::Node>& nodes,
         std::vector<bool>& x_dep, std::vector<bool>& n_dep)
      : text_(text), allow_index_(allow_index), nodes_(nodes), x_dep_(x_dep), n_dep_(n_dep) {}

  std::vector<int> top(bool& vector) {
    std::vector<int> roots;
    skip();
    if (peek() == '[') {
      vector = true;
      ++pos_;
      roots.push_back(expr());
      while (accept(',')) roots.push_back(expr());
      expect(']');
    } else {
      roots.push_back(expr());
    }
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return roots;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "expression \"" + std::string(text_) + "\" column " +
                                      std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int add(Expression::Node node) {
    bool xd = node.op == Expression::Node::X;
    bool nd = node.op == Expression::Node::N;
    for (int child : {node.a, node.b}) {
      if (child >= 0) {
        xd = xd || x_dep_[static_cast<std::size_t>(child)];
        nd = nd || n_dep_[static_cast<std::size_t>(child)];
      }
    }
    nodes_.push_back(node);
    x_dep_.push_back(xd);
    n_dep_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
  }
  bool xdep(int i) const { return x_dep_[static_cast<std::size_t>(i)]; }
  bool ndep(int i) const { return n_dep_[static_cast<std::size_t>(i)]; }

  Complex fold(int i) const;

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = add({Expression::Node::Add, lhs, term()});
      } else if (accept('-')) {
        lhs = add({Expression::Node::Sub, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = add({Expression::Node::Mul, lhs, unary()});
      } else if (peek() == '/') {
        const std::size_t at = pos_++;
        const int rhs = unary();
        if (xdep(rhs)) {
          pos_ = at;
          fail("division by an expression in x");
        }
        lhs = add({Expression::Node::Div, lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept('-')) return add({Expression::Node::Neg, unary()});
    if (accept('+')) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    if (peek() != '^') return base;
    const std::size_t at = pos_++;
    const int exponent = unary();
    if (xdep(exponent)) {
      pos_ = at;
      fail("exponent depends on x");
    }
    if (xdep(base)) {
      if (ndep(exponent)) {
        pos_ = at;
        fail("power of x needs a fixed exponent");
      }
      const Complex k = fold(exponent);
      if (k.imag() != 0.0 || k.real() != std::round(k.real()) || k.real() < 0 ||
          k.real() > kMaxVariablePower) {
        pos_ = at;
        fail("power of x needs an integer exponent 0.." + std::to_string(kMaxVariablePower));
      }
    }
    return add({Expression::Node::Pow, base, exponent});
  }

  int primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const int inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") return add({Expression::Node::X});
      if (word == "i") return add({Expression::Node::Const, -1, -1, Complex(0.0, 1.0)});
      if (word == "n") {
        if (!allow_index_) {
          pos_ = start;
          fail("'n' is only allowed in scheme expressions");
        }
        return add({Expression::Node::N});
      }
      if (word == "ind") return indicator(start);
      pos_ = start;
      fail("unknown name '" + std::string(word) + "'");
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    const auto used = static_cast<std::size_t>(end - rest.c_str());
    if (used == 0) fail("malformed number");
    pos_ += used;
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return add({Expression::Node::Const, -1, -1, Complex(0.0, v)});
    }
    return add({Expression::Node::Const, -1, -1, Complex(v, 0.0)});
  }

  int indicator(std::size_t start) {
    expect('(');
    const int lo = expr();
    expect(',');
    const int hi = expr();
    expect(')');
    if (xdep(lo) || xdep(hi)) {
      pos_ = start;
      fail("ind bounds must not depend on x");
    }
    if (!ndep(lo) && !ndep(hi)) {
      const Complex a = fold(lo);
      const Complex b = fold(hi);
      if (a.imag() != 0.0 || b.imag() != 0.0 || !(0.0 <= a.real() && a.real() < b.real() &&
                                                   b.real() <= 1.0)) {
        pos_ = start;
        fail("ind(a, b) needs real bounds with 0 <= a < b <= 1");
      }
    }
    return add({Expression::Node::Ind, lo, hi});
  }

  std::string_view text_;
  bool allow_index_;
  std::size_t pos_ = 0;
  std::vector<Expression::Node>& nodes_;
  std::vector<bool>& x_dep_;
  std::vector<bool>& n_dep_;
};

Complex integer_power(Complex base, double k) {
  if (k != std::round(k) || std::abs(k) > kMaxConstantPower) {
    throw Error(ErrorKind::Domain, "exponent must be an integer of moderate size");
  }
  auto e = static_cast<long long>(std::abs(k));
  Complex result(1.0, 0.0);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return k < 0 ? Complex(1.0, 0.0) / result : result;
}

Complex evaluate_node(const std::vector<Expression::Node>& nodes, int i, double x, double n) {
  const auto& node = nodes[static_cast<std::size_t>(i)];
  using N = Expression::Node;
  switch (node.op) {
    case N::Const: return node.value;
    case N::X: return {x, 0.0};
    case N::N: return {n, 0.0};
    case N::Add: return evaluate_node(nodes, node.a, x, n) + evaluate_node(nodes, node.b, x, n);
    case N::Sub: return evaluate_node(nodes, node.a, x, n) - evaluate_node(nodes, node.b, x, n);
    case N::Mul: return evaluate_node(nodes, node.a, x, n) * evaluate_node(nodes, node.b, x, n);
    case N::Div: {
      const Complex d = evaluate_node(nodes, node.b, x, n);
      if (d == Complex(0.0, 0.0)) throw Error(ErrorKind::Domain, "division by zero");
      return evaluate_node(nodes, node.a, x, n) / d;
    }
    case N::Neg: return -evaluate_node(nodes, node.a, x, n);
    case N::Pow: {
      const Complex k = evaluate_node(nodes, node.b, x, n);
      if (k.imag() != 0.0) throw Error(ErrorKind::Domain, "exponent must be real");
      return integer_power(evaluate_node(nodes, node.a, x, n), k.real());
    }
    case N::Ind: {
      const Complex a = evaluate_node(nodes, node.a, x, n);
      const Complex b = evaluate_node(nodes, node.b, x, n);
      if (a.imag() != 0.0 || b.imag() != 0.0 || !(0.0 <= a.real() && a.real() < b.real() &&
                                                   b.real() <= 1.0)) {
        throw Error(ErrorKind::Domain, "ind(a, b) needs real bounds with 0 <= a < b <= 1");
      }
      return {a.real() <= x && x < b.real() ? 1.0 : 0.0, 0.0};
    }
  }
  return {};
}

Complex Parser::fold(int i) const { return evaluate_node(nodes_, i, 0.0, 0.0); }

}  // namespace

Expression Expression::parse(std::string_view text, bool allow_index) {
  Expression e;
  e.text_ = std::string(text);
  Parser p(text, allow_index, e.nodes_, e.x_dep_, e.n_dep_);
  e.roots_ = p.top(e.vector_);
  return e;
}

bool Expression::depends_on_x() const noexcept {
  return std::any_of(roots_.begin(), roots_.end(), [&](int r) { return x_dep_[static_cast<std::size_t>(r)]; });
}

bool Expression::depends_on_index() const noexcept {
  return std::any_of(roots_.begin(), roots_.end(), [&](int r) { return n_dep_[static_cast<std::size_t>(r)]; });
}

Complex Expression::eval(int node, double x, double n) const { return evaluate_node(nodes_, node, x, n); }

void Expression::evaluate(double x, double n, std::span<Complex> out) const {
  if (out.size() != roots_.size()) throw Error(ErrorKind::Structural, "output size does not match the expression");
  for (std::size_t c = 0; c < roots_.size(); ++c) out[c] = eval(roots_[c], x, n);
}

std::vector<Complex> Expression::constant() const {
  if (depends_on_x() || depends_on_index()) {
    throw Error(ErrorKind::Parse, "expression \"" + text_ + "\" is not a constant");
  }
  std::vector<Complex> out(roots_.size());
  evaluate(0.0, 0.0, out);
  return out;
}

void Expression::check_shape(const MeasureSpace& space, const ValueSpace& vs) const {
  if (space.kind() != SpaceKind::Interval) {
    throw Error(ErrorKind::Structural, "expressions describe maps on the interval space");
  }
  if (vs.is_scalar() ? vector_ : (!vector_ || roots_.size() != vs.dim())) {
    throw Error(ErrorKind::Structural, "expression \"" + text_ + "\" has " +
                                           std::to_string(roots_.size()) +
                                           " component(s) but the value space has dimension " +
                                           std::to_string(vs.dim()));
  }
}

SimpleMap Expression::to_simple(const MeasureSpace& space, const ValueSpace& vs, double n) const {
  check_shape(space, vs);
  if (depends_on_x()) {
    throw Error(ErrorKind::NotElementary, "expression \"" + text_ + "\" is not piecewise constant");
  }
  std::vector<double> breaks{0.0, 1.0};
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].op != Node::Ind) continue;
    for (int child : {nodes_[i].a, nodes_[i].b}) {
      const double v = eval(child, 0.0, n).real();
      if (v > 0.0 && v < 1.0) breaks.push_back(v);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  detail::StepData data;
  data.kind = SpaceKind::Interval;
  data.dim = vs.dim();
  data.breaks = breaks;
  data.slot.resize(breaks.size() - 1);
  data.values.resize(data.slot.size() * data.dim);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    data.slot[p] = static_cast<std::uint32_t>(p);
    evaluate(breaks[p], n, std::span<Complex>(data.values.data() + p * data.dim, data.dim));
  }
  return SimpleMap(space, vs, std::move(data));
}

Evaluator Expression::to_evaluator(const MeasureSpace& space, const ValueSpace& vs) const {
  check_shape(space, vs);
  if (depends_on_index()) throw Error(ErrorKind::Parse, "target expression \"" + text_ + "\" uses n");
  if (!depends_on_x()) return Evaluator::of(to_simple(space, vs));
  auto self = std::make_shared<const Expression>(*this);
  return Evaluator(space, vs, [self](const Point& p, std::span<Complex> out) {
    const double* x = std::get_if<double>(&p);
    if (x == nullptr) throw Error(ErrorKind::Domain, "expression evaluated at an atom");
    self->evaluate(*x, 0.0, out);
  });
}

ApproximationScheme Expression::to_scheme(const MeasureSpace& space, const ValueSpace& vs,
                                          std::int64_t first) const {
  check_shape(space, vs);
  if (depends_on_x()) {
    throw Error(ErrorKind::Parse, "scheme expression \"" + text_ + "\" must not depend on x");
  }
  auto self = std::make_shared<const Expression>(*this);
  return ApproximationScheme::sequence(
      [self, space, vs](std::int64_t n) { return self->to_simple(space, vs, static_cast<double>(n)); },
      first, SchemeTag::ExpressionDriven);
}

}  // namespace bochner
