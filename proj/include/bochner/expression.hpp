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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bochner/banach.hpp"
#include "bochner/measure.hpp"
#include "bochner/scheme.hpp"
#include "bochner/simple_map.hpp"

namespace bochner {

/// Expressions for maps on the interval space:
///
///   2.5, 3i, i, x, n          literals, the point x, the scheme index n
///   a + b, a - b, a * b, -a   arithmetic
///   a / b                     b must not depend on x
///   x^k                       k an integer 0..8 when the base depends on x
///   ind(a, b)                 indicator of [a, b), 0 <= a < b <= 1
///   [e1, e2, ...]             vector value (top level only)
///
/// `n` is only accepted when parsing scheme expressions.
class Expression {
 public:
  static Expression parse(std::string_view text, bool allow_index = false);

  const std::string& text() const noexcept { return text_; }
  std::size_t components() const noexcept { return roots_.size(); }
  bool is_vector() const noexcept { return vector_; }
  bool depends_on_x() const noexcept;
  bool depends_on_index() const noexcept;

  void evaluate(double x, double n, std::span<Complex> out) const;
  /// Value of an expression free of x and n.
  std::vector<Complex> constant() const;

  /// Exact simple map of an x-free expression at index n.
  SimpleMap to_simple(const MeasureSpace& space, const ValueSpace& vs, double n = 0.0) const;
  /// Target evaluator; exact when the expression is x-free.
  Evaluator to_evaluator(const MeasureSpace& space, const ValueSpace& vs) const;
  /// n -> to_simple(n) for n = first, first + 1, ...
  ApproximationScheme to_scheme(const MeasureSpace& space, const ValueSpace& vs,
                                std::int64_t first = 1) const;

  struct Node {
    enum Op { Const, X, N, Add, Sub, Mul, Div, Neg, Pow, Ind } op;
    int a = -1;
    int b = -1;
    Complex value{};
  };

 private:
  Complex eval(int node, double x, double n) const;
  void check_shape(const MeasureSpace& space, const ValueSpace& vs) const;

  std::string text_;
  std::vector<Node> nodes_;
  std::vector<int> roots_;
  bool vector_ = false;
  std::vector<bool> x_dep_;
  std::vector<bool> n_dep_;
};

}  // namespace bochner
