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

// Flat piecewise-constant representation shared by simple maps, partitions
// and sampled references. Not part of the installed interface.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bochner/banach.hpp"
#include "bochner/error.hpp"
#include "bochner/measure.hpp"

namespace bochner::detail {

struct StepData {
  SpaceKind kind = SpaceKind::Interval;
  // Interval only: piece boundaries, breaks.front() == 0, breaks.back() == 1.
  std::vector<double> breaks;
  // Value slot of each piece (interval) or of each atom (discrete).
  std::vector<std::uint32_t> slot;
  // dim components per slot, slot-major.
  std::vector<Complex> values;
  std::size_t dim = 1;

  std::size_t piece_count() const noexcept { return slot.size(); }
  std::size_t slot_count() const noexcept { return values.size() / dim; }
  std::span<const Complex> slot_value(std::size_t k) const noexcept {
    return {values.data() + k * dim, dim};
  }
  double piece_mass(const MeasureSpace& space, std::size_t p) const noexcept {
    return kind == SpaceKind::Interval ? space.total_mass() * (breaks[p + 1] - breaks[p])
                                       : space.weights()[p];
  }
};

/// Deduplicates slot values by exact equality, merges adjacent interval
/// pieces sharing a slot and renumbers slots by first appearance.
StepData canonicalize(StepData raw);

/// Visits the common refinement of two step layouts over one space.
/// fn(piece_mass, slot_a, slot_b, lo, hi); lo/hi are the atom index for
/// discrete spaces.
template <class Fn>
void overlay(const MeasureSpace& space, const StepData& a, const StepData& b, Fn&& fn) {
  if (a.kind != b.kind || a.kind != space.kind()) {
    throw Error(ErrorKind::Structural, "overlay of incompatible layouts");
  }
  if (a.kind == SpaceKind::Discrete) {
    if (a.slot.size() != b.slot.size()) {
      throw Error(ErrorKind::Structural, "overlay of layouts with different atom counts");
    }
    const auto w = space.weights();
    for (std::size_t k = 0; k < a.slot.size(); ++k) {
      fn(w[k], a.slot[k], b.slot[k], static_cast<double>(k), static_cast<double>(k));
    }
    return;
  }
  const double mass = space.total_mass();
  std::size_t i = 0;
  std::size_t j = 0;
  double cur = 0.0;
  const std::size_t na = a.slot.size();
  const std::size_t nb = b.slot.size();
  while (i < na && j < nb) {
    const double end_a = a.breaks[i + 1];
    const double end_b = b.breaks[j + 1];
    const double end = end_a < end_b ? end_a : end_b;
    if (end > cur) fn(mass * (end - cur), a.slot[i], b.slot[j], cur, end);
    cur = end;
    if (end_a == end) ++i;
    if (end_b == end) ++j;
  }
}

struct HeightMass {
  double height;
  double mass;
};

/// Norm of a - b on every piece of the common refinement.
std::vector<HeightMass> difference_profile(const MeasureSpace& space, const ValueSpace& values,
                                           const StepData& a, const StepData& b);

/// Norm of each slot together with the slot's total mass.
std::vector<HeightMass> slot_norms(const MeasureSpace& space, const ValueSpace& values,
                                   const StepData& a);

/// inf{eps > 0 : mass(height >= eps) <= eps}; expected linear time.
double ky_fan_from_profile(std::vector<HeightMass> profile);

/// Sum of height * mass in profile order.
double l1_from_profile(std::span<const HeightMass> profile);

/// Layout of a partition: slot k is cell k.
StepData layout_of(const Partition& partition);

/// Cells of a canonical layout, in slot order.
std::vector<MeasurableSet> cells_of(const StepData& data);

}  // namespace bochner::detail
