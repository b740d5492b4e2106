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

#include <span>
#include <vector>

#include "bochner/measure.hpp"
#include "bochner/simple_map.hpp"

namespace bochner {

/// Largest exhaustive search over atom subsets; beyond it the discrete search
/// is greedy and only a lower bound.
inline constexpr std::size_t kExhaustiveAtomLimit = 20;

struct WorstSubset {
  MeasurableSet set;
  double value;
  bool exact;
};

/// sup over A with mu(A) <= delta of the integral of weights_map * 1_A.
/// weights_map must be scalar with real nonnegative values.
WorstSubset worst_subset(const MeasureSpace& space, const SimpleMap& weights_map, double delta);

/// The function delta -> worst_subset(...).value, prepared once and then
/// evaluated at many delta. Built from the norm of an arbitrary simple map.
class ModulusCurve {
 public:
  explicit ModulusCurve(const SimpleMap& s);

  double operator()(double delta) const;
  bool exact() const noexcept { return exact_; }

 private:
  // Interval: cells by decreasing norm with prefix sums. Discrete: the
  // (mass, best value) staircase of all subsets, or the greedy chain.
  std::vector<double> norm_;
  std::vector<double> prefix_mass_;
  std::vector<double> prefix_value_;
  bool fractional_ = true;
  bool exact_ = true;
};

struct ModulusTable {
  std::vector<double> values;
  bool exact;
};

/// ModulusCurve of s at each point of a descending grid, by weighted
/// selection instead of a full sort. Values may differ from the curve in the
/// last bits because the summation order differs.
ModulusTable modulus_on_grid(const SimpleMap& s, std::span<const double> descending_grid);

}  // namespace bochner
