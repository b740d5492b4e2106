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

#include <doctest.h>

#include <cmath>

#include "bochner/error.hpp"
#include "bochner/metrics.hpp"
#include "bochner/theorems.hpp"

using namespace bochner;

namespace {

const auto kUnit = MeasureSpace::interval();
const auto kScalar = ValueSpace::scalar();

Evaluator poly(std::vector<double> coeffs, MeasureSpace space = kUnit) {
  return Evaluator(space, kScalar, [coeffs](const Point& p, std::span<Complex> out) {
    const double x = std::get<double>(p);
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    out[0] = acc;
  });
}

ApproximableMap dyadic(const Evaluator& f) {
  return ApproximableMap(f, ApproximationScheme::dyadic(f, SamplingRule::Left, 20));
}

double l1_to_identity(const SimpleMap& s) {
  double total = 0.0;
  const auto cells = s.cells();
  for (std::size_t c = 0; c < s.cell_count(); ++c) {
    const double v = s.value(c)[0].real();
    for (const auto& iv : cells[c].intervals()) {
      auto prim = [v](double x) { return 0.5 * (x - v) * std::abs(x - v); };
      total += prim(iv.hi) - prim(iv.lo);
    }
  }
  return total;
}

SimpleMap spike(std::int64_t n, double height) {
  if (n == 1) return SimpleMap::step(kUnit, {0.0, 1.0}, {height});
  return SimpleMap::step(kUnit, {0.0, 1.0 / static_cast<double>(n), 1.0}, {height, 0.0});
}

const SimpleMap kZero = SimpleMap::constant(kUnit, kScalar, {0.0});

}  // namespace

TEST_CASE("norm domination on a discrete vector map") {
  const auto disc = MeasureSpace::discrete({0.2, 0.3, 0.5});
  const auto s = SimpleMap::on_atoms(disc, ValueSpace::vector(2, NormKind::Inf), {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const auto r = norm_domination_check(ApproximableMap::of(s));
  CHECK(r.slack == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r.holds());
}

TEST_CASE("norm domination for x and x - 1/2") {
  const auto a = norm_domination_check(dyadic(poly({0.0, 1.0})));
  CHECK(std::abs(a.slack) <= 1e-6);
  CHECK(a.holds());
  const auto b = norm_domination_check(dyadic(poly({-0.5, 1.0})));
  CHECK(std::abs(b.slack - 0.25) <= 1e-6);
  CHECK(b.holds());
}

TEST_CASE("density for x") {
  const auto f = dyadic(poly({0.0, 1.0}));
  const auto r = density_approximation(f, 0.01);
  CHECK(r.index == 7);
  CHECK(l1_to_identity(r.map) == 0.00390625);
  CHECK(r.certified < 0.01);
  CHECK(r.measured <= r.certified);

  const auto coarse = density_approximation(f, 0.5);
  CHECK(coarse.index == 1);
  CHECK(l1_to_identity(coarse.map) == 0.25);
}

TEST_CASE("density always beats epsilon on polynomials") {
  for (const auto& coeffs : std::vector<std::vector<double>>{{0.0, 1.0}, {1.0, -2.0, 1.0}, {0.0, 0.0, 0.0, 2.0}}) {
    const auto f = dyadic(poly(coeffs));
    for (const double eps : {0.1, 0.01, 0.001}) {
      const auto r = density_approximation(f, eps);
      CHECK(r.certified < eps);
    }
  }
}

TEST_CASE("density of a simple map is the map itself") {
  const auto s = SimpleMap::step(kUnit, {0.0, 0.25, 1.0}, {4.0, 1.0});
  const auto r = density_approximation(ApproximableMap::of(s), 1e-3);
  CHECK(r.map == s);
  CHECK(r.measured == 0.0);
  CHECK(r.exact_reference);
}

TEST_CASE("density needs a positive epsilon and enough depth") {
  const auto f = dyadic(poly({0.0, 1.0}));
  CHECK_THROWS_AS(density_approximation(f, 0.0), Error);
  try {
    density_approximation(f, 1e-9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resolution);
  }
}

TEST_CASE("Vitali backward, shrinking indicators") {
  const auto seq = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, 1.0); });
  const auto v = vitali_audit(ApproximableMap::of(kZero), seq, VitaliDirection::Backward);
  CHECK(v.conclusion == VitaliConclusion::Consistent);
  CHECK(v.ui.uniformly_integrable());
  for (std::size_t k = 0; k < v.indices.size(); ++k) {
    CHECK(v.l1_trace[k] == 1.0 / static_cast<double>(v.indices[k]));
    CHECK(v.norm_trace[k] == 1.0 / static_cast<double>(v.indices[k]));
  }
  CHECK(v.in_measure_trace.back() <= 1.0 / 64);
}

TEST_CASE("Vitali backward, scaled spikes") {
  const auto seq = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, static_cast<double>(n)); });
  const auto v = vitali_audit(ApproximableMap::of(kZero), seq, VitaliDirection::Backward);
  CHECK(v.conclusion != VitaliConclusion::Consistent);
  REQUIRE_FALSE(v.ui.uniformly_integrable());
  CHECK(std::get<FailsAtResolution>(v.ui.verdict).floor == 1.0);
  for (const double m : v.norm_trace) CHECK(m == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Vitali forward, constant sequence") {
  const auto s = SimpleMap::step(kUnit, {0.0, 0.5, 1.0}, {2.0, -1.0});
  const auto v = vitali_audit(ApproximableMap::of(s), ApproximationScheme::constant(s), VitaliDirection::Forward);
  CHECK(v.conclusion == VitaliConclusion::Consistent);
  for (const double d : v.l1_trace) CHECK(d == 0.0);
  CHECK(v.ui.uniformly_integrable());
}

TEST_CASE("Vitali forward, scaled spikes do not converge in l1") {
  const auto seq = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, static_cast<double>(n)); });
  const auto v = vitali_audit(ApproximableMap::of(kZero), seq, VitaliDirection::Forward);
  CHECK(v.conclusion == VitaliConclusion::Inapplicable);
}

TEST_CASE("Riesz-Fischer for the dyadic approximations of x") {
  const auto f = poly({0.0, 1.0});
  const auto r = riesz_fischer_construct(ApproximationScheme::dyadic(f, SamplingRule::Left, 20));
  CHECK(std::abs(r.extension.value[0].real() - 0.5) <= 1e-6);
  CHECK(r.audit.conclusion == VitaliConclusion::Consistent);
  REQUIRE(r.picks.size() == r.tails.size());
  for (std::size_t k = 0; k < r.tails.size(); ++k) CHECK(r.tails[k] <= std::ldexp(1.0, -static_cast<int>(k)));
}

TEST_CASE("Riesz-Fischer for constants 1 + 2^-n") {
  const auto space = MeasureSpace::interval(2.0);
  const auto seq = ApproximationScheme::sequence([space](std::int64_t n) {
    return SimpleMap::constant(space, kScalar, {1.0 + std::ldexp(1.0, -static_cast<int>(n))});
  });
  const auto r = riesz_fischer_construct(seq);
  CHECK(r.limit_map == SimpleMap::constant(space, kScalar, {1.0}));
  CHECK(r.extension.value[0] == Complex(2.0, 0.0));
}

TEST_CASE("Riesz-Fischer for a stationary sequence") {
  const auto s = SimpleMap::step(kUnit, {0.0, 0.375, 1.0}, {3.0, 0.5});
  const auto r = riesz_fischer_construct(ApproximationScheme::constant(s));
  CHECK(r.limit_map == s);
  CHECK(r.audit.conclusion == VitaliConclusion::Consistent);
}

TEST_CASE("Riesz-Fischer rejects a sequence that is not Cauchy") {
  const auto seq = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, 1.0); });
  try {
    riesz_fischer_construct(seq);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("monotonicity for x over x squared") {
  ExtensionOptions o;
  o.tol = 1e-5;
  const auto r = positivity_monotonicity_check(dyadic(poly({0.0, 1.0})), dyadic(poly({0.0, 0.0, 1.0})), o);
  CHECK(std::abs(r.slack - 1.0 / 6.0) <= 1e-5);
  CHECK(r.holds());
}

TEST_CASE("monotonicity of a map against itself and against zero") {
  const auto f = dyadic(poly({0.0, 1.0}));
  const auto same = positivity_monotonicity_check(f, f);
  CHECK(same.slack == 0.0);
  const auto zero = dyadic(poly({0.0}));
  const auto pos = positivity_monotonicity_check(f, zero);
  CHECK(pos.slack >= -1e-6);
}

TEST_CASE("monotonicity preconditions") {
  const auto f = dyadic(poly({0.0, 1.0}));
  const auto g = dyadic(poly({0.0, 0.0, 1.0}));
  try {
    positivity_monotonicity_check(g, f);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  const auto c = ApproximableMap::of(SimpleMap::constant(kUnit, kScalar, {Complex(1.0, 1.0)}));
  try {
    positivity_monotonicity_check(c, ApproximableMap::of(kZero));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}
