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

#include "bochner/random.hpp"

#include <cmath>

#include "step_data.hpp"

namespace bochner {

SimpleMap random_simple_map(const MeasureSpace& space, const ValueSpace& vs, CampaignRng& rng,
                            int max_depth) {
  detail::StepData data;
  data.kind = space.kind();
  data.dim = vs.dim();
  std::size_t labels = 0;
  if (space.kind() == SpaceKind::Interval) {
    const int depth = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_depth) + 1));
    const std::uint64_t cells = std::uint64_t{1} << depth;
    data.breaks.push_back(0.0);
    for (std::uint64_t k = 1; k < cells; ++k) {
      if (rng.coin()) data.breaks.push_back(std::ldexp(static_cast<double>(k), -depth));
    }
    data.breaks.push_back(1.0);
    labels = data.breaks.size() - 1;
    for (std::size_t p = 0; p < labels; ++p) data.slot.push_back(static_cast<std::uint32_t>(p));
  } else {
    const std::size_t atoms = space.atom_count();
    labels = 1 + rng.below(atoms);
    for (std::size_t k = 0; k < atoms; ++k) data.slot.push_back(static_cast<std::uint32_t>(rng.below(labels)));
  }
  data.values.resize(labels * data.dim);
  for (auto& z : data.values) z = rng.unit_square();
  return SimpleMap(space, vs, std::move(data));
}

}  // namespace bochner
