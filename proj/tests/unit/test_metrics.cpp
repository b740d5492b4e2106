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

#include <algorithm>
#include <cmath>

#include "bochner/error.hpp"
#include "bochner/metrics.hpp"
#include "bochner/random.hpp"
#include "bochner/uniform_integrability.hpp"

using namespace bochner;

namespace {

const auto kUnit = MeasureSpace::interval();
const auto kScalar = ValueSpace::scalar();

struct Cell {
  double height;
  double mass;
};

// |s - t| cell by cell, built through the map algebra rather than the
// distance code.
std::vector<Cell> difference_cells(const SimpleMap& s, const SimpleMap& t) {
  const auto d = norm_map(linear_combine(1.0, s, -1.0, t));
  std::vector<Cell> out;
  for (std::size_t k = 0; k < d.cell_count(); ++k) {
    out.push_back({d.value(k)[0].real(), measure(d.space(), d.cells()[k])});
  }
  return out;
}

double tail(const std::vector<Cell>& cells, double eps) {
  double m = 0.0;
  for (const auto& c : cells) {
    if (c.height >= eps) m += c.mass;
  }
  return m;
}

// Bisection on the monotone predicate mu(|s-t| >= eps) <= eps.
double ky_fan_bisection(const SimpleMap& s, const SimpleMap& t) {
  const auto cells = difference_cells(s, t);
  double lo = 0.0;
  double hi = 1.0 + s.space().total_mass();
  for (const auto& c : cells) hi = std::max(hi, c.height + 1.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (tail(cells, mid) <= mid ? hi : lo) = mid;
  }
  return hi;
}

SimpleMap indicator(double lo, double hi) {
  std::vector<double> breaks{0.0}, values;
  if (lo > 0.0) {
    breaks.push_back(lo);
    values.push_back(0.0);
  }
  breaks.push_back(hi);
  values.push_back(1.0);
  if (hi < 1.0) {
    breaks.push_back(1.0);
    values.push_back(0.0);
  }
  return SimpleMap::step(kUnit, breaks, values);
}

std::vector<MeasureSpace> spaces() {
  return {kUnit, MeasureSpace::interval(3.0), MeasureSpace::discrete({0.1, 0.2, 0.05, 0.4, 0.25}),
          MeasureSpace::discrete({1.0, 2.0, 0.5})};
}

}  // namespace

TEST_CASE("l1 distance examples") {
  CHECK(l1_distance(indicator(0.0, 0.5), indicator(0.25, 0.75)) == 0.5);
  const auto s = indicator(0.125, 0.375);
  CHECK(l1_distance(s, s) == 0.0);
  const auto heavy = MeasureSpace::interval(3.0);
  CHECK(l1_distance(SimpleMap::constant(heavy, kScalar, {Complex(0, -2)}),
                    SimpleMap::constant(heavy, kScalar, {0.0})) == 6.0);
}

TEST_CASE("Ky Fan distance of constant maps") {
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  CHECK(ky_fan_distance(SimpleMap::constant(kUnit, kScalar, {0.5}), zero) == 0.5);
  CHECK(ky_fan_distance(SimpleMap::constant(kUnit, kScalar, {2.0}), zero) == 1.0);
  CHECK(ky_fan_distance(SimpleMap::constant(kUnit, kScalar, {0.25}), zero) == 0.25);
  const auto s = indicator(0.0, 0.75);
  CHECK(ky_fan_distance(s, s) == 0.0);
}

TEST_CASE("Ky Fan distance agrees with bisection") {
  CampaignRng rng(71);
  for (const auto& space : spaces()) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto vs = ValueSpace::vector(2, NormKind::Two);
      auto s = random_simple_map(space, vs, rng);
      auto t = random_simple_map(space, vs, rng);
      if (trial % 3 == 0) s = linear_combine(3.0, s, 0.0, t);
      CHECK(ky_fan_distance(s, t) == doctest::Approx(ky_fan_bisection(s, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("distances reject mismatched spaces") {
  const auto a = SimpleMap::constant(kUnit, kScalar, {1.0});
  const auto b = SimpleMap::constant(MeasureSpace::interval(2.0), kScalar, {1.0});
  CHECK_THROWS_AS(l1_distance(a, b), Error);
  CHECK_THROWS_AS(ky_fan_distance(a, b), Error);
  CHECK_THROWS_AS(inequality_audit(a, b, 0.1), Error);
}

TEST_CASE("inequality slack examples") {
  const auto s = indicator(0.0, 0.3);
  const auto zero = SimpleMap::constant(kUnit, kScalar, {0.0});
  const auto r = inequality_audit(s, zero, 0.5);
  CHECK(r.markov_slack == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(r.valid());

  const auto same = inequality_audit(s, s, 0.1);
  CHECK(same.markov_slack == 0.0);
  CHECK(same.triangle_slack == 0.0);
  CHECK(same.valid());

  CHECK_THROWS_AS(inequality_audit(s, zero, 0.0), Error);
  CHECK_THROWS_AS(inequality_audit(s, zero, -1.0), Error);
}

TEST_CASE("inequality slacks match a direct evaluation") {
  CampaignRng rng(73);
  for (const auto& space : spaces()) {
    const auto vs = ValueSpace::vector(3, NormKind::Inf);
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = random_simple_map(space, vs, rng);
      const auto t = random_simple_map(space, vs, rng);
      const auto r = inequality_audit(s, t, 0.1);
      const auto cells = difference_cells(s, t);
      double l1 = 0.0, upper = 0.0;
      for (const auto& c : cells) {
        l1 += c.height * c.mass;
        if (c.height >= 0.1) upper += c.height * c.mass;
      }
      const auto gap = combine(vs, 1.0, integrate_simple(s), -1.0, integrate_simple(t));
      CHECK(r.markov_slack == doctest::Approx(l1 / 0.1 - tail(cells, 0.1)).epsilon(1e-10));
      CHECK(r.truncation_slack ==
            doctest::Approx(0.1 * space.total_mass() + upper - l1).epsilon(1e-10));
      CHECK(r.triangle_slack == doctest::Approx(l1 - norm(vs, gap)).epsilon(1e-10));
      CHECK(r.valid());
    }
  }
}

TEST_CASE("Ky Fan is a pseudometric") {
  CampaignRng rng(79);
  for (const auto& space : spaces()) {
    const auto vs = ValueSpace::vector(2, NormKind::One);
    for (int trial = 0; trial < 250; ++trial) {
      const auto s = random_simple_map(space, vs, rng);
      const auto t = random_simple_map(space, vs, rng);
      const auto u = random_simple_map(space, vs, rng);
      CHECK(ky_fan_distance(s, s) == 0.0);
      CHECK(std::abs(ky_fan_distance(s, t) - ky_fan_distance(t, s)) <= 1e-12);
      CHECK(ky_fan_distance(s, u) <= ky_fan_distance(s, t) + ky_fan_distance(t, u) + 1e-9);
    }
  }
}

TEST_CASE("convergence in measure is weaker than l1") {
  CampaignRng rng(83);
  for (const auto& space : spaces()) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = random_simple_map(space, kScalar, rng);
      const auto t = random_simple_map(space, kScalar, rng);
      const double l1 = l1_distance(s, t);
      CHECK(ky_fan_distance(s, t) <= std::max(std::sqrt(l1), l1) + 1e-9);
    }
  }
}

TEST_CASE("truncated l1 is controlled by the pair modulus") {
  CampaignRng rng(89);
  for (const auto& space : spaces()) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto s = random_simple_map(space, ValueSpace::vector(2, NormKind::Two), rng);
      const auto t = random_simple_map(space, ValueSpace::vector(2, NormKind::Two), rng);
      for (const double eps : {0.05, 0.2, 0.7}) {
        const double m = tail(difference_cells(s, t), eps);
        const double omega = m > 0.0 ? ui_modulus({s, t}, m) : 0.0;
        // |s - t| 1_A <= |s| 1_A + |t| 1_A, each bounded by the modulus.
        CHECK(l1_distance(s, t) <= eps * space.total_mass() + 2.0 * omega + 1e-12);
      }
    }
  }
}
