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
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bochner/banach.hpp"
#include "bochner/measure.hpp"
#include "bochner/simple_map.hpp"

namespace bochner {

inline constexpr int kMaxDyadicDepth = 24;
inline constexpr std::int64_t kUnboundedIndex = std::numeric_limits<std::int64_t>::max();

enum class SamplingRule { Left, Mid };

/// A map given pointwise (a member of M(Omega,E) we can compute with).
/// Evaluators built from a simple map remember it and are sampled exactly.
class Evaluator {
 public:
  using Function = std::function<void(const Point&, std::span<Complex>)>;

  Evaluator(MeasureSpace space, ValueSpace value_space, Function fn);
  static Evaluator of(const SimpleMap& s);

  const MeasureSpace& space() const noexcept { return space_; }
  const ValueSpace& value_space() const noexcept { return value_space_; }
  const std::optional<SimpleMap>& exact() const noexcept { return exact_; }

  BanachElement operator()(const Point& x) const;
  void evaluate_into(const Point& x, std::span<Complex> out) const { fn_(x, out); }

  /// Values at the left endpoints or midpoints of the 2^depth dyadic cells
  /// (interval), or at every atom (discrete). Exact evaluators return their map.
  SimpleMap sample(int depth, SamplingRule rule) const;

  /// x -> |f(x)| as a scalar evaluator.
  Evaluator norm() const;
  static Evaluator combine(Complex alpha, const Evaluator& f, Complex beta, const Evaluator& g);

 private:
  MeasureSpace space_;
  ValueSpace value_space_;
  Function fn_;
  std::optional<SimpleMap> exact_;
};

enum class SchemeTag { DyadicLeft, DyadicMid, ExplicitList, ExpressionDriven, Constant, Combined, Custom };

/// How the Cauchy search walks a scheme: one level at a time (each level
/// doubles the cell count) or n -> 2n for plain index sequences.
enum class IndexProgression { Level, Doubling };

/// The indexed sequence n -> s_n of simple maps carrying a limit. Members are
/// generated on demand and memoised; copies share the memo.
class ApproximationScheme {
 public:
  using Generator = std::function<SimpleMap(std::int64_t)>;

  ApproximationScheme(Generator generator, SchemeTag tag, std::int64_t first, std::int64_t last,
                      IndexProgression progression, bool dyadic_levels = false);

  /// Level n samples the evaluator on 2^n dyadic cells, n = 0..depth.
  static ApproximationScheme dyadic(const Evaluator& f, SamplingRule rule, int depth);
  /// Members 1..N.
  static ApproximationScheme explicit_list(std::vector<SimpleMap> maps);
  /// s_n = s for every n >= 1.
  static ApproximationScheme constant(const SimpleMap& s);
  /// Unbounded index sequence starting at `first`, walked by doubling.
  static ApproximationScheme sequence(Generator generator, std::int64_t first = 1,
                                      SchemeTag tag = SchemeTag::Custom);
  /// n -> alpha*a_n + beta*b_n over the common index range.
  static ApproximationScheme combine(Complex alpha, const ApproximationScheme& a, Complex beta,
                                     const ApproximationScheme& b);
  /// n -> |s_n|.
  ApproximationScheme norm() const;

  const SimpleMap& at(std::int64_t n) const;

  SchemeTag tag() const noexcept;
  std::int64_t first() const noexcept;
  std::int64_t last() const noexcept;
  IndexProgression progression() const noexcept;
  bool dyadic_levels() const noexcept;

  std::int64_t next(std::int64_t n) const noexcept;
  /// Last index among the first `horizon` members.
  std::int64_t last_within(std::int64_t horizon) const noexcept;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// A member of L(Omega,E) presented by its pointwise values and an
/// approximating scheme of simple maps.
class ApproximableMap {
 public:
  ApproximableMap(Evaluator target, ApproximationScheme scheme);
  static ApproximableMap of(const SimpleMap& s);

  const Evaluator& target() const noexcept { return target_; }
  const ApproximationScheme& scheme() const noexcept { return scheme_; }

  /// Sampling rule for reference maps: the scheme's own rule when it is dyadic.
  SamplingRule reference_rule() const noexcept;

  ApproximableMap norm() const;
  static ApproximableMap combine(Complex alpha, const ApproximableMap& f, Complex beta,
                                 const ApproximableMap& g);

 private:
  Evaluator target_;
  ApproximationScheme scheme_;
};

}  // namespace bochner
