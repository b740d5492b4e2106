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

#include "bochner/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "bochner/error.hpp"
#include "sampling.hpp"

namespace bochner {

// --- Evaluator ---------------------------------------------------------------

Evaluator::Evaluator(MeasureSpace space, ValueSpace value_space, Function fn)
    : space_(std::move(space)), value_space_(value_space), fn_(std::move(fn)) {}

Evaluator Evaluator::of(const SimpleMap& s) {
  Evaluator out(s.space(), s.value_space(), [s](const Point& x, std::span<Complex> dst) {
    const auto v = evaluate(s, x);
    std::copy(v.components().begin(), v.components().end(), dst.begin());
  });
  out.exact_ = s;
  return out;
}

BanachElement Evaluator::operator()(const Point& x) const {
  std::vector<Complex> v(value_space_.dim());
  fn_(x, v);
  return BanachElement(std::move(v));
}

SimpleMap Evaluator::sample(int depth, SamplingRule rule) const {
  if (exact_) return *exact_;
  return SimpleMap(space_, value_space_, detail::sample_layout(*this, depth, rule));
}

namespace detail {

StepData sample_layout(const Evaluator& f, int depth, SamplingRule rule) {
  if (f.exact()) return f.exact()->data();
  const auto& space = f.space();
  const std::size_t dim = f.value_space().dim();
  StepData data;
  data.kind = space.kind();
  data.dim = dim;
  if (space.kind() == SpaceKind::Discrete) {
    const std::size_t n = space.atom_count();
    data.values.resize(n * dim);
    data.slot.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      f.evaluate_into(Point{k}, std::span<Complex>(data.values.data() + k * dim, dim));
      data.slot[k] = static_cast<std::uint32_t>(k);
    }
    return data;
  }
  if (depth < 0 || depth > kMaxDyadicDepth) {
    throw Error(ErrorKind::Domain, "dyadic depth " + std::to_string(depth) + " outside 0.." +
                                       std::to_string(kMaxDyadicDepth));
  }
  const std::size_t n = std::size_t{1} << depth;
  data.breaks.resize(n + 1);
  data.slot.resize(n);
  data.values.resize(n * dim);
  for (std::size_t k = 0; k < n; ++k) {
    data.breaks[k] = std::ldexp(static_cast<double>(k), -depth);
    data.slot[k] = static_cast<std::uint32_t>(k);
    const double x = rule == SamplingRule::Left
                         ? data.breaks[k]
                         : std::ldexp(static_cast<double>(2 * k + 1), -depth - 1);
    f.evaluate_into(Point{x}, std::span<Complex>(data.values.data() + k * dim, dim));
  }
  data.breaks[n] = 1.0;
  return data;
}

}  // namespace detail

Evaluator Evaluator::norm() const {
  auto fn = fn_;
  const auto vs = value_space_;
  Evaluator out(space_, ValueSpace::scalar(), [fn, vs](const Point& x, std::span<Complex> dst) {
    std::vector<Complex> v(vs.dim());
    fn(x, v);
    dst[0] = Complex(vs.norm_of(v), 0.0);
  });
  if (exact_) out.exact_ = norm_map(*exact_);
  return out;
}

Evaluator Evaluator::combine(Complex alpha, const Evaluator& f, Complex beta, const Evaluator& g) {
  if (!(f.space_ == g.space_) || !(f.value_space_ == g.value_space_)) {
    throw Error(ErrorKind::Structural, "evaluators live on different spaces");
  }
  auto ff = f.fn_;
  auto gf = g.fn_;
  const std::size_t dim = f.value_space_.dim();
  Evaluator out(f.space_, f.value_space_,
                [=](const Point& x, std::span<Complex> dst) {
                  std::vector<Complex> a(dim), b(dim);
                  ff(x, a);
                  gf(x, b);
                  for (std::size_t c = 0; c < dim; ++c) dst[c] = alpha * a[c] + beta * b[c];
                });
  if (f.exact_ && g.exact_) out.exact_ = linear_combine(alpha, *f.exact_, beta, *g.exact_);
  return out;
}

// --- ApproximationScheme -----------------------------------------------------

struct ApproximationScheme::State {
  Generator generator;
  SchemeTag tag;
  std::int64_t first;
  std::int64_t last;
  IndexProgression progression;
  bool dyadic_levels;
  std::mutex mutex;
  std::map<std::int64_t, SimpleMap> cache;
};

ApproximationScheme::ApproximationScheme(Generator generator, SchemeTag tag, std::int64_t first,
                                         std::int64_t last, IndexProgression progression,
                                         bool dyadic_levels)
    : state_(std::make_shared<State>()) {
  if (last < first) throw Error(ErrorKind::Domain, "scheme index range is empty");
  if (progression == IndexProgression::Doubling && first < 1) {
    throw Error(ErrorKind::Domain, "doubling schemes start at an index >= 1");
  }
  state_->generator = std::move(generator);
  state_->tag = tag;
  state_->first = first;
  state_->last = last;
  state_->progression = progression;
  state_->dyadic_levels = dyadic_levels;
}

ApproximationScheme ApproximationScheme::dyadic(const Evaluator& f, SamplingRule rule, int depth) {
  if (f.space().kind() != SpaceKind::Interval) {
    throw Error(ErrorKind::Structural, "dyadic schemes need an interval space");
  }
  if (depth < 0 || depth > kMaxDyadicDepth) {
    throw Error(ErrorKind::Domain, "dyadic depth " + std::to_string(depth) + " outside 0.." +
                                       std::to_string(kMaxDyadicDepth));
  }
  return ApproximationScheme(
      [f, rule](std::int64_t n) {
        // Exact targets still get sampled so level n really has 2^n cells.
        const Evaluator plain(f.space(), f.value_space(),
                              [&f](const Point& x, std::span<Complex> out) { f.evaluate_into(x, out); });
        return plain.sample(static_cast<int>(n), rule);
      },
      rule == SamplingRule::Left ? SchemeTag::DyadicLeft : SchemeTag::DyadicMid, 0, depth,
      IndexProgression::Level, true);
}

ApproximationScheme ApproximationScheme::explicit_list(std::vector<SimpleMap> maps) {
  if (maps.empty()) throw Error(ErrorKind::Domain, "explicit scheme needs at least one map");
  for (const auto& m : maps) {
    if (!(m.space() == maps.front().space()) || !(m.value_space() == maps.front().value_space())) {
      throw Error(ErrorKind::Structural, "explicit scheme members must share their spaces");
    }
  }
  const auto count = static_cast<std::int64_t>(maps.size());
  auto shared = std::make_shared<const std::vector<SimpleMap>>(std::move(maps));
  return ApproximationScheme(
      [shared](std::int64_t n) { return (*shared)[static_cast<std::size_t>(n - 1)]; },
      SchemeTag::ExplicitList, 1, count, IndexProgression::Level);
}

ApproximationScheme ApproximationScheme::constant(const SimpleMap& s) {
  return ApproximationScheme([s](std::int64_t) { return s; }, SchemeTag::Constant, 1,
                             kUnboundedIndex, IndexProgression::Doubling);
}

ApproximationScheme ApproximationScheme::sequence(Generator generator, std::int64_t first,
                                                  SchemeTag tag) {
  return ApproximationScheme(std::move(generator), tag, first, kUnboundedIndex,
                             IndexProgression::Doubling);
}

ApproximationScheme ApproximationScheme::combine(Complex alpha, const ApproximationScheme& a,
                                                 Complex beta, const ApproximationScheme& b) {
  if (a.progression() != b.progression() || a.dyadic_levels() != b.dyadic_levels()) {
    throw Error(ErrorKind::Structural, "combined schemes must be indexed the same way");
  }
  const auto first = std::max(a.first(), b.first());
  const auto last = std::min(a.last(), b.last());
  return ApproximationScheme(
      [a, b, alpha, beta](std::int64_t n) { return linear_combine(alpha, a.at(n), beta, b.at(n)); },
      SchemeTag::Combined, first, last, a.progression(), a.dyadic_levels());
}

ApproximationScheme ApproximationScheme::norm() const {
  const ApproximationScheme self = *this;
  return ApproximationScheme([self](std::int64_t n) { return norm_map(self.at(n)); }, tag(),
                             first(), last(), progression(), dyadic_levels());
}

const SimpleMap& ApproximationScheme::at(std::int64_t n) const {
  auto& st = *state_;
  if (n < st.first || n > st.last) {
    throw Error(ErrorKind::Domain, "scheme index " + std::to_string(n) + " outside its range");
  }
  {
    std::lock_guard lock(st.mutex);
    if (auto it = st.cache.find(n); it != st.cache.end()) return it->second;
  }
  SimpleMap member = st.generator(n);
  std::lock_guard lock(st.mutex);
  if (!st.cache.empty()) {
    const auto& ref = st.cache.begin()->second;
    if (!(member.space() == ref.space()) || !(member.value_space() == ref.value_space())) {
      throw Error(ErrorKind::Structural, "scheme members must share their spaces");
    }
  }
  return st.cache.try_emplace(n, std::move(member)).first->second;
}

SchemeTag ApproximationScheme::tag() const noexcept { return state_->tag; }
std::int64_t ApproximationScheme::first() const noexcept { return state_->first; }
std::int64_t ApproximationScheme::last() const noexcept { return state_->last; }
IndexProgression ApproximationScheme::progression() const noexcept { return state_->progression; }
bool ApproximationScheme::dyadic_levels() const noexcept { return state_->dyadic_levels; }

std::int64_t ApproximationScheme::next(std::int64_t n) const noexcept {
  return state_->progression == IndexProgression::Level ? n + 1 : 2 * n;
}

std::int64_t ApproximationScheme::last_within(std::int64_t horizon) const noexcept {
  const auto first = state_->first;
  if (horizon <= 0) return first;
  if (state_->last - first < horizon) return state_->last;
  return first + horizon - 1;
}

// --- ApproximableMap ---------------------------------------------------------

ApproximableMap::ApproximableMap(Evaluator target, ApproximationScheme scheme)
    : target_(std::move(target)), scheme_(std::move(scheme)) {
  const auto& s0 = scheme_.at(scheme_.first());
  if (!(s0.space() == target_.space()) || !(s0.value_space() == target_.value_space())) {
    throw Error(ErrorKind::Structural, "scheme and target live on different spaces");
  }
}

ApproximableMap ApproximableMap::of(const SimpleMap& s) {
  return ApproximableMap(Evaluator::of(s), ApproximationScheme::constant(s));
}

SamplingRule ApproximableMap::reference_rule() const noexcept {
  return scheme_.tag() == SchemeTag::DyadicLeft ? SamplingRule::Left : SamplingRule::Mid;
}

ApproximableMap ApproximableMap::norm() const {
  return ApproximableMap(target_.norm(), scheme_.norm());
}

ApproximableMap ApproximableMap::combine(Complex alpha, const ApproximableMap& f, Complex beta,
                                         const ApproximableMap& g) {
  return ApproximableMap(Evaluator::combine(alpha, f.target_, beta, g.target_),
                         ApproximationScheme::combine(alpha, f.scheme_, beta, g.scheme_));
}

}  // namespace bochner
