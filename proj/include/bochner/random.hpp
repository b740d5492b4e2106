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
#include <random>

#include "bochner/banach.hpp"
#include "bochner/measure.hpp"
#include "bochner/simple_map.hpp"

namespace bochner {

/// Seeded source for campaigns. The same seed gives the same draws on every
/// platform: only the raw 64-bit engine output is used.
class CampaignRng {
 public:
  explicit CampaignRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool coin() { return (engine_() >> 63) != 0; }
  Complex unit_square() {
    const double re = uniform();
    return {re, uniform()};
  }

 private:
  std::mt19937_64 engine_;
};

/// Campaign distribution. Interval space: dyadic grid of depth 0..8, each
/// interior grid point kept with probability 1/2. Discrete space: every atom
/// gets one of up to atom_count labels. Each distinct cell value has
/// components uniform in the complex unit square [0,1) x [0,1)i.
SimpleMap random_simple_map(const MeasureSpace& space, const ValueSpace& vs, CampaignRng& rng,
                            int max_depth = 8);

}  // namespace bochner
