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

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace bochner {

enum class SpaceKind { Interval, Discrete };

/// A finite measure space. Interval: total_mass times Lebesgue measure on
/// [0,1). Discrete: finitely many atoms with nonnegative weights.
class MeasureSpace {
 public:
  static MeasureSpace interval(double total_mass = 1.0);
  static MeasureSpace discrete(std::vector<double> weights);

  SpaceKind kind() const noexcept;
  double total_mass() const noexcept;
  std::span<const double> weights() const noexcept;
  std::size_t atom_count() const noexcept;

  bool operator==(const MeasureSpace& other) const noexcept;

 private:
  struct Data;
  explicit MeasureSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Half-open [lo, hi) inside [0,1).
struct Interval {
  double lo;
  double hi;

  bool operator==(const Interval&) const = default;
};

/// A finite union of half-open intervals, or a set of atoms, always held in
/// canonical form: equal sets have identical representations.
class MeasurableSet {
 public:
  static MeasurableSet empty(SpaceKind kind);
  static MeasurableSet whole(const MeasureSpace& space);
  static MeasurableSet intervals(std::vector<Interval> pieces);
  static MeasurableSet atoms(std::vector<std::size_t> indices);

  SpaceKind kind() const noexcept { return kind_; }
  bool is_empty() const noexcept { return intervals_.empty() && atoms_.empty(); }
  std::span<const Interval> intervals() const noexcept { return intervals_; }
  std::span<const std::size_t> atoms() const noexcept { return atoms_; }

  bool subset_of(const MeasurableSet& other) const;

  bool operator==(const MeasurableSet&) const = default;

 private:
  explicit MeasurableSet(SpaceKind kind) : kind_(kind) {}

  SpaceKind kind_;
  std::vector<Interval> intervals_;
  std::vector<std::size_t> atoms_;
};

double measure(const MeasureSpace& space, const MeasurableSet& set);

enum class SetOp { Union, Intersect, Complement, Difference };

/// Set algebra. Complement takes only `a`; the binary operations need `b`.
MeasurableSet combine(const MeasureSpace& space, SetOp op, const MeasurableSet& a,
                      const std::optional<MeasurableSet>& b = std::nullopt);

/// A finite measurable partition of the whole space.
class Partition {
 public:
  Partition(MeasureSpace space, std::vector<MeasurableSet> cells);

  const MeasureSpace& space() const noexcept { return space_; }
  std::span<const MeasurableSet> cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool operator==(const Partition& other) const {
    return space_ == other.space_ && cells_ == other.cells_;
  }

 private:
  MeasureSpace space_;
  std::vector<MeasurableSet> cells_;
};

/// Coarsest common refinement. Empty intersections are dropped and cells are
/// ordered by their lowest point (interval) or lowest atom (discrete).
Partition refine_common(const Partition& p, const Partition& q);

}  // namespace bochner
