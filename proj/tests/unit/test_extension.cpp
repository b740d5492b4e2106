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
#include "bochner/expression.hpp"
#include "bochner/extension.hpp"
#include "bochner/random.hpp"

using namespace bochner;

namespace {

const auto kUnit = MeasureSpace::interval();
const auto kScalar = ValueSpace::scalar();

Evaluator poly(std::vector<Complex> coeffs) {
  return Evaluator(kUnit, kScalar, [coeffs](const Point& p, std::span<Complex> out) {
    const double x = std::get<double>(p);
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    out[0] = acc;
  });
}

ApproximableMap dyadic(const Evaluator& f, SamplingRule rule = SamplingRule::Left) {
  return ApproximableMap(f, ApproximationScheme::dyadic(f, rule, 20));
}

// Exact int_0^1 |x - s(x)| for a real step map s.
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

}  // namespace

TEST_CASE("integral of x") {
  const auto r = extend_integral(dyadic(poly({0.0, 1.0})));
  CHECK(std::abs(r.value[0].real() - 0.5) <= std::ldexp(1.0, -21));
  CHECK(r.value[0].imag() == 0.0);
  CHECK(r.n_used <= 20);
  CHECK(r.cauchy_bound >= 0.0);
  CHECK(std::abs(r.value[0].real() - 0.5) <= r.cauchy_bound);
  CHECK(r.in_measure_converged);
  CHECK(r.in_measure_trace.back() <= r.in_measure_threshold);
  CHECK(r.ui_report.uniformly_integrable());
}

TEST_CASE("integral of x squared") {
  ExtensionOptions o;
  o.tol = 1e-5;
  const auto r = extend_integral(dyadic(poly({0.0, 0.0, 1.0})), o);
  CHECK(std::abs(r.value[0].real() - 1.0 / 3.0) <= 1e-5);
}

TEST_CASE("constant scheme gives the simple integral exactly") {
  CampaignRng rng(211);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_simple_map(kUnit, ValueSpace::vector(2, NormKind::Two), rng);
    const auto r = extend_integral(ApproximableMap::of(s));
    CHECK(r.value == integrate_simple(s));
    CHECK(r.cauchy_bound == 0.0);
  }
}

TEST_CASE("scaled spikes are not elementary") {
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  const auto scheme = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, static_cast<double>(n)); });
  const ApproximableMap f(Evaluator::of(zero), scheme);
  try {
    extend_integral(f);
    FAIL("expected an error");
  } catch (const ExtensionError& e) {
    CHECK(e.kind() == ErrorKind::NotElementary);
    CHECK_FALSE(e.partial().ui_report.uniformly_integrable());
  }
}

TEST_CASE("scheme that misses its target does not converge") {
  const auto f = poly({0.0, 1.0});
  const auto other = poly({0.0, 0.0, 1.0});
  const ApproximableMap wrong(f, ApproximationScheme::dyadic(other, SamplingRule::Left, 20));
  try {
    extend_integral(wrong);
    FAIL("expected an error");
  } catch (const ExtensionError& e) {
    CHECK(e.kind() == ErrorKind::NotConverging);
  }
}

TEST_CASE("exhausted depth is a resolution failure with a partial trace") {
  ExtensionOptions o;
  o.tol = 1e-12;
  try {
    extend_integral(dyadic(poly({0.0, 1.0})), o);
    FAIL("expected an error");
  } catch (const ExtensionError& e) {
    CHECK(e.kind() == ErrorKind::Resolution);
    CHECK(e.partial().cauchy_trace.size() == 20);
    CHECK(std::isinf(e.partial().cauchy_bound));
  }
}

TEST_CASE("tolerance must be positive") {
  ExtensionOptions o;
  o.tol = 0.0;
  CHECK_THROWS_AS(extend_integral(dyadic(poly({1.0})), o), Error);
}

TEST_CASE("left and midpoint rules agree") {
  const auto f = poly({0.0, 0.0, 1.0});
  ExtensionOptions o;
  o.tol = 1e-5;
  const auto w = well_definedness_audit(f, ApproximationScheme::dyadic(f, SamplingRule::Left, 20),
                                        ApproximationScheme::dyadic(f, SamplingRule::Mid, 20), o);
  CHECK(w.verdict == Agreement::Agree);
  CHECK(std::abs(w.a->value[0].real() - 1.0 / 3.0) <= 1e-5);
  CHECK(std::abs(w.b->value[0].real() - 1.0 / 3.0) <= 1e-5);
  CHECK_FALSE(w.in_measure_mismatch);
  REQUIRE(w.pair_trace.size() >= 2);
  CHECK(w.pair_trace.back() < w.pair_trace.front());
}

TEST_CASE("identical schemes agree exactly") {
  const auto f = poly({0.25, -1.0, 2.0});
  const auto s = ApproximationScheme::dyadic(f, SamplingRule::Mid, 20);
  ExtensionOptions o;
  o.tol = 1e-5;
  const auto w = well_definedness_audit(f, s, s, o);
  CHECK(w.verdict == Agreement::Agree);
  CHECK(w.discrepancy == 0.0);
  for (const double d : w.pair_trace) CHECK(d == 0.0);
}

TEST_CASE("schemes for different maps disagree") {
  const auto x = poly({0.0, 1.0});
  const auto x2 = poly({0.0, 0.0, 1.0});
  const auto w = well_definedness_audit(x, ApproximationScheme::dyadic(x, SamplingRule::Left, 20),
                                        ApproximationScheme::dyadic(x2, SamplingRule::Left, 20));
  CHECK(w.verdict == Agreement::Disagree);
  CHECK(w.discrepancy == doctest::Approx(0.5 - 1.0 / 3.0).epsilon(1e-4));
  CHECK(w.in_measure_mismatch);
}

TEST_CASE("failing branch makes the audit inapplicable") {
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  const auto bad = ApproximationScheme::sequence([](std::int64_t n) { return spike(n, static_cast<double>(n)); });
  const auto w = well_definedness_audit(Evaluator::of(zero), ApproximationScheme::constant(zero), bad);
  CHECK(w.verdict == Agreement::Inapplicable);
  CHECK(w.reason.find("second scheme") == 0);
}

TEST_CASE("extension is linear") {
  CampaignRng rng(223);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Complex> cf(3), cg(3);
    for (auto& c : cf) c = rng.unit_square() * 2.0 - Complex(1, 1);
    for (auto& c : cg) c = rng.unit_square() * 2.0 - Complex(1, 1);
    const Complex a = rng.unit_square() * 2.0 - Complex(1, 1);
    const Complex b = rng.unit_square() * 2.0 - Complex(1, 1);
    const auto f = dyadic(poly(cf));
    const auto g = dyadic(poly(cg));
    ExtensionOptions o;
    o.tol = 1e-5;
    const auto rf = extend_integral(f, o);
    const auto rg = extend_integral(g, o);
    const auto rc = extend_integral(ApproximableMap::combine(a, f, b, g), o);
    const Complex expected = a * rf.value[0] + b * rg.value[0];
    CHECK(std::abs(rc.value[0] - expected) <=
          rc.cauchy_bound + std::abs(a) * rf.cauchy_bound + std::abs(b) * rg.cauchy_bound + 1e-9);
  }
}

TEST_CASE("left rule error halves per level for x") {
  const auto s = ApproximationScheme::dyadic(poly({0.0, 1.0}), SamplingRule::Left, 12);
  double prev = l1_to_identity(s.at(0));
  CHECK(prev == 0.5);
  for (std::int64_t n = 1; n <= 12; ++n) {
    const double e = l1_to_identity(s.at(n));
    CHECK(e == doctest::Approx(std::ldexp(1.0, static_cast<int>(-n - 1))).epsilon(1e-12));
    const double ratio = e / prev;
    CHECK(ratio >= 0.45);
    CHECK(ratio <= 0.55);
    prev = e;
  }
}

TEST_CASE("expression targets integrate like hand-built ones") {
  const auto e = Expression::parse("3*x^2 - ind(0.25, 0.75)");
  const auto f = e.to_evaluator(kUnit, kScalar);
  ExtensionOptions o;
  o.tol = 1e-5;
  const auto r = extend_integral(ApproximableMap(f, ApproximationScheme::dyadic(f, SamplingRule::Mid, 20)), o);
  CHECK(std::abs(r.value[0].real() - 0.5) <= 1e-5);
}

TEST_CASE("vector-valued targets") {
  const auto e = Expression::parse("[x, 2i, x^3]");
  const auto vs = ValueSpace::vector(3, NormKind::Two);
  const auto f = e.to_evaluator(MeasureSpace::interval(2.0), vs);
  ExtensionOptions o;
  o.tol = 1e-5;
  const auto r = extend_integral(ApproximableMap(f, ApproximationScheme::dyadic(f, SamplingRule::Mid, 20)), o);
  CHECK(std::abs(r.value[0] - Complex(1.0, 0.0)) <= 1e-5);
  CHECK(std::abs(r.value[1] - Complex(0.0, 4.0)) <= 1e-5);
  CHECK(std::abs(r.value[2] - Complex(0.5, 0.0)) <= 1e-5);
}
