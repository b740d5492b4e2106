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
#include "bochner/random.hpp"
#include "bochner/simple_map.hpp"
#include "support.hpp"

using namespace bochner;

namespace {

const auto kUnit = MeasureSpace::interval();
const auto kScalar = ValueSpace::scalar();

SimpleMap indicator(double lo, double hi, double height = 1.0) {
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  if (lo > 0.0) {
    breaks.push_back(lo);
    values.push_back(0.0);
  }
  breaks.push_back(hi);
  values.push_back(height);
  if (hi < 1.0) {
    breaks.push_back(1.0);
    values.push_back(0.0);
  }
  return SimpleMap::step(kUnit, breaks, values);
}

double distance(const ValueSpace& vs, const BanachElement& a, const BanachElement& b) {
  return norm(vs, combine(vs, 1.0, a, -1.0, b));
}

// Same map on a partition split at extra dyadic points.
SimpleMap refined(const SimpleMap& s, int depth) {
  std::vector<double> breaks;
  std::vector<BanachElement> values;
  const int n = 1 << depth;
  for (int k = 0; k < n; ++k) breaks.push_back(static_cast<double>(k) / n);
  for (const auto& cell : s.cells()) {
    for (const auto& iv : cell.intervals()) {
      breaks.push_back(iv.lo);
    }
  }
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) values.push_back(evaluate(s, breaks[k]));
  return SimpleMap::step(s.space(), s.value_space(), breaks, values);
}

}  // namespace

TEST_CASE("integral examples") {
  CHECK(integrate_simple(SimpleMap::step(kUnit, {0.0, 0.5, 1.0}, {2.0, 4.0})) == BanachElement{3.0});

  const auto disc = MeasureSpace::discrete({0.2, 0.3, 0.5});
  const auto e2 = ValueSpace::vector(2, NormKind::Inf);
  const auto s = SimpleMap::on_atoms(disc, e2, {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const auto v = integrate_simple(s);
  CHECK(v[0].real() == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(v[1].real() == doctest::Approx(0.8).epsilon(1e-15));

  const auto zero = SimpleMap::constant(kUnit, ValueSpace::vector(3, NormKind::Two), BanachElement::zero(3));
  CHECK(integrate_simple(zero) == BanachElement::zero(3));
}

TEST_CASE("norm map examples") {
  const auto e2 = ValueSpace::vector(2, NormKind::Two);
  const auto s = SimpleMap::constant(kUnit, e2, {3.0, 4.0});
  CHECK(norm_map(s) == SimpleMap::constant(kUnit, kScalar, {5.0}));

  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  CHECK(norm_map(zero) == zero);

  const auto c = SimpleMap::step(kUnit, kScalar, {0.0, 0.5, 1.0}, {{Complex(0, -2)}, {Complex(-3, 4)}});
  CHECK(norm_map(c) == SimpleMap::step(kUnit, {0.0, 0.5, 1.0}, {2.0, 5.0}));
}

TEST_CASE("linear combination examples") {
  const auto s = indicator(0.0, 0.5);
  const auto t = indicator(0.25, 0.75);
  const auto u = linear_combine(2.0, s, -1.0, t);
  CHECK(u == SimpleMap::step(kUnit, {0.0, 0.25, 0.5, 0.75, 1.0}, {2.0, 1.0, -1.0, 0.0}));
  CHECK(linear_combine(1.0, s, 0.0, t) == s);

  const auto r = linear_combine(Complex(0, 1), s, 0.0, t);
  CHECK(evaluate(r, 0.1) == BanachElement{Complex(0, 1)});
  CHECK(evaluate(r, 0.6) == BanachElement{0.0});
}

TEST_CASE("linear combination rejects mismatched spaces") {
  const auto s = indicator(0.0, 0.5);
  const auto other = SimpleMap::constant(MeasureSpace::interval(2.0), kScalar, {1.0});
  CHECK_THROWS_AS(linear_combine(1.0, s, 1.0, other), Error);
  const auto vec = SimpleMap::constant(kUnit, ValueSpace::vector(1, NormKind::Two), {1.0});
  CHECK_THROWS_AS(linear_combine(1.0, s, 1.0, vec), Error);
}

TEST_CASE("restriction examples") {
  const auto four = SimpleMap::constant(kUnit, kScalar, {4.0});
  CHECK(integrate_simple(restrict(four, MeasurableSet::intervals({{0.0, 0.25}}))) == BanachElement{1.0});
  CHECK(restrict(four, MeasurableSet::whole(kUnit)) == four);
  CHECK(restrict(four, MeasurableSet::empty(SpaceKind::Interval)) ==
        SimpleMap::constant(kUnit, kScalar, {0.0}));
}

TEST_CASE("evaluation uses half-open cells") {
  const auto s = SimpleMap::step(kUnit, {0.0, 0.5, 1.0}, {2.0, 4.0});
  CHECK(evaluate(s, 0.3) == BanachElement{2.0});
  CHECK(evaluate(s, 0.5) == BanachElement{4.0});
  CHECK(evaluate(s, 0.0) == BanachElement{2.0});
  CHECK_THROWS_AS(evaluate(s, 1.0), Error);
  CHECK_THROWS_AS(evaluate(s, -0.1), Error);

  const auto disc = MeasureSpace::discrete({0.25, 0.25, 0.25, 0.25});
  const auto d = SimpleMap::on_atoms(disc, kScalar, {{1.0}, {2.0}, {3.0}, {7.0}});
  CHECK(evaluate(d, std::size_t{3}) == BanachElement{7.0});
  CHECK_THROWS_AS(evaluate(d, std::size_t{4}), Error);
}

TEST_CASE("canonical form merges equal values") {
  const auto s = SimpleMap::step(kUnit, {0.0, 0.25, 0.5, 0.75, 1.0}, {1.0, 1.0, 2.0, 1.0});
  CHECK(s.cell_count() == 2);
  CHECK(measure(kUnit, s.cells()[0]) == 0.75);
  // Rebuilding from the canonical partition is the identity.
  std::vector<BanachElement> values;
  for (std::size_t k = 0; k < s.cell_count(); ++k) values.push_back(s.value(k));
  CHECK(SimpleMap(s.partition(), s.value_space(), values) == s);
}

TEST_CASE("canonicalizing twice equals once") {
  CampaignRng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_simple_map(kUnit, ValueSpace::vector(2, NormKind::Two), rng);
    std::vector<BanachElement> values;
    for (std::size_t k = 0; k < s.cell_count(); ++k) values.push_back(s.value(k));
    const SimpleMap again(s.partition(), s.value_space(), values);
    CHECK(again == s);
    CHECK(again.partition() == s.partition());
  }
}

TEST_CASE("integral is unchanged by refinement") {
  CampaignRng rng(43);
  const auto vs = ValueSpace::vector(3, NormKind::Two);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_simple_map(MeasureSpace::interval(2.5), vs, rng);
    const auto r = refined(s, 9);
    CHECK(distance(vs, integrate_simple(s), integrate_simple(r)) <= 1e-12);
  }
}

TEST_CASE("integral is linear") {
  CampaignRng rng(47);
  const auto vs = ValueSpace::vector(2, NormKind::One);
  for (const auto& space : {kUnit, MeasureSpace::discrete({0.1, 0.7, 0.2, 1.5, 0.0})}) {
    for (int trial = 0; trial < 500; ++trial) {
      const auto s = random_simple_map(space, vs, rng);
      const auto t = random_simple_map(space, vs, rng);
      const Complex a = rng.unit_square() * 4.0 - Complex(2, 2);
      const Complex b = rng.unit_square() * 4.0 - Complex(2, 2);
      const auto lhs = integrate_simple(linear_combine(a, s, b, t));
      const auto rhs = combine(vs, a, integrate_simple(s), b, integrate_simple(t));
      CHECK(distance(vs, lhs, rhs) <=
            1e-9 * (1 + std::abs(a) + std::abs(b)) * (1 + norm_integral(s) + norm_integral(t)));
    }
  }
}

TEST_CASE("norm of the integral is dominated") {
  CampaignRng rng(53);
  const auto vs = ValueSpace::vector(3, NormKind::Inf);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_simple_map(kUnit, vs, rng);
    CHECK(norm(vs, integrate_simple(s)) <= norm_integral(s) + 1e-12);
  }
}

TEST_CASE("integral of real maps is positive and monotone") {
  CampaignRng rng(59);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = norm_map(random_simple_map(kUnit, kScalar, rng));
    const auto t = norm_map(random_simple_map(kUnit, kScalar, rng));
    CHECK(integrate_simple(s)[0].real() >= -1e-12);
    // max(s, t) >= t pointwise
    const auto m = linear_combine(0.5, linear_combine(1.0, s, 1.0, t), 0.5,
                                  norm_map(linear_combine(1.0, s, -1.0, t)));
    CHECK(integrate_simple(m)[0].real() >= integrate_simple(t)[0].real() - 1e-12);
  }
}

TEST_CASE("restricted norm integral matches the worst-set integrand") {
  CampaignRng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_simple_map(kUnit, ValueSpace::vector(2, NormKind::Two), rng);
    const auto a = testing::random_dyadic_set(rng);
    double direct = 0.0;
    for (const auto& iv : a.intervals()) {
      for (std::size_t c = 0; c < s.cell_count(); ++c) {
        const auto inter = combine(kUnit, SetOp::Intersect, s.cells()[c], MeasurableSet::intervals({iv}));
        direct += measure(kUnit, inter) * norm(s.value_space(), s.value(c));
      }
    }
    CHECK(integrate_simple(restrict(norm_map(s), a))[0].real() == doctest::Approx(direct).epsilon(1e-12));
  }
}
