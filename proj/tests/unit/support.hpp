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

#include <cmath>
#include <cstdint>
#include <vector>

#include "bochner/measure.hpp"
#include "bochner/random.hpp"
#include "bochner/simple_map.hpp"

namespace bochner::testing {

/// Max over all atom subsets of weight <= delta of the summed values.
inline double exhaustive_worst(const std::vector<double>& weights, const std::vector<double>& values,
                               double delta) {
  const std::size_t n = weights.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double mass = 0.0, value = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        mass += weights[k];
        value += weights[k] * values[k];
      }
    }
    if (mass <= delta && value > best) best = value;
  }
  return best;
}

/// Random canonical union of dyadic intervals at depth 6.
inline MeasurableSet random_dyadic_set(CampaignRng& rng) {
  std::vector<Interval> pieces;
  for (int k = 0; k < 64; ++k) {
    if (rng.coin()) pieces.push_back({k / 64.0, (k + 1) / 64.0});
  }
  return MeasurableSet::intervals(std::move(pieces));
}

inline std::vector<double> random_weights(CampaignRng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (auto& x : w) x = std::ldexp(static_cast<double>(1 + rng.below(16)), -4);
  return w;
}

}  // namespace bochner::testing
