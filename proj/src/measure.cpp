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

#include "bochner/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "bochner/error.hpp"
#include "step_data.hpp"

namespace bochner {

struct MeasureSpace::Data {
  SpaceKind kind;
  double total_mass;
  std::vector<double> weights;
};

MeasureSpace MeasureSpace::interval(double total_mass) {
  if (!(total_mass >= 0.0) || !std::isfinite(total_mass)) {
    throw Error(ErrorKind::Domain, "interval total mass must be finite and nonnegative");
  }
  return MeasureSpace(std::make_shared<const Data>(Data{SpaceKind::Interval, total_mass, {}}));
}

MeasureSpace MeasureSpace::discrete(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorKind::Domain, "discrete space needs at least one atom");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::Domain, "atom weights must be finite and nonnegative");
    }
    total += w;
  }
  return MeasureSpace(
      std::make_shared<const Data>(Data{SpaceKind::Discrete, total, std::move(weights)}));
}

SpaceKind MeasureSpace::kind() const noexcept { return data_->kind; }
double MeasureSpace::total_mass() const noexcept { return data_->total_mass; }
std::span<const double> MeasureSpace::weights() const noexcept { return data_->weights; }
std::size_t MeasureSpace::atom_count() const noexcept { return data_->weights.size(); }

bool MeasureSpace::operator==(const MeasureSpace& other) const noexcept {
  if (data_ == other.data_) return true;
  return data_->kind == other.data_->kind && data_->total_mass == other.data_->total_mass &&
         data_->weights == other.data_->weights;
}

// --- MeasurableSet -----------------------------------------------------------

MeasurableSet MeasurableSet::empty(SpaceKind kind) { return MeasurableSet(kind); }

MeasurableSet MeasurableSet::whole(const MeasureSpace& space) {
  MeasurableSet out(space.kind());
  if (space.kind() == SpaceKind::Interval) {
    out.intervals_.push_back({0.0, 1.0});
  } else {
    out.atoms_.resize(space.atom_count());
    for (std::size_t k = 0; k < out.atoms_.size(); ++k) out.atoms_[k] = k;
  }
  return out;
}

MeasurableSet MeasurableSet::intervals(std::vector<Interval> pieces) {
  MeasurableSet out(SpaceKind::Interval);
  for (const auto& iv : pieces) {
    if (!(iv.lo >= 0.0) || !(iv.hi <= 1.0) || iv.lo > iv.hi) {
      throw Error(ErrorKind::Domain, "interval [" + std::to_string(iv.lo) + ", " +
                                         std::to_string(iv.hi) + ") is not inside [0,1)");
    }
  }
  std::erase_if(pieces, [](const Interval& iv) { return iv.lo >= iv.hi; });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (const auto& iv : pieces) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
    } else {
      out.intervals_.push_back(iv);
    }
  }
  return out;
}

MeasurableSet MeasurableSet::atoms(std::vector<std::size_t> indices) {
  MeasurableSet out(SpaceKind::Discrete);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  out.atoms_ = std::move(indices);
  return out;
}

namespace {

void require_kind(const MeasureSpace& space, const MeasurableSet& set) {
  if (set.kind() != space.kind()) {
    throw Error(ErrorKind::Structural, "measurable set does not belong to this kind of space");
  }
  if (set.kind() == SpaceKind::Discrete && !set.atoms().empty() &&
      set.atoms().back() >= space.atom_count()) {
    throw Error(ErrorKind::Structural,
                "atom index " + std::to_string(set.atoms().back()) + " outside a space of " +
                    std::to_string(space.atom_count()) + " atoms");
  }
}

std::vector<Interval> intersect_intervals(std::span<const Interval> a,
                                          std::span<const Interval> b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

std::vector<Interval> complement_intervals(std::span<const Interval> a) {
  std::vector<Interval> out;
  double cur = 0.0;
  for (const auto& iv : a) {
    if (iv.lo > cur) out.push_back({cur, iv.lo});
    cur = iv.hi;
  }
  if (cur < 1.0) out.push_back({cur, 1.0});
  return out;
}

}  // namespace

bool MeasurableSet::subset_of(const MeasurableSet& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == SpaceKind::Discrete) {
    return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
  }
  // Canonical intervals are maximal, so each piece must sit inside one of other's.
  for (const auto& iv : intervals_) {
    auto it = std::upper_bound(other.intervals_.begin(), other.intervals_.end(), iv.lo,
                               [](double x, const Interval& o) { return x < o.lo; });
    if (it == other.intervals_.begin()) return false;
    --it;
    if (!(it->lo <= iv.lo && iv.hi <= it->hi)) return false;
  }
  return true;
}

double measure(const MeasureSpace& space, const MeasurableSet& set) {
  require_kind(space, set);
  if (space.kind() == SpaceKind::Interval) {
    double length = 0.0;
    for (const auto& iv : set.intervals()) length += iv.hi - iv.lo;
    return space.total_mass() * length;
  }
  double sum = 0.0;
  const auto w = space.weights();
  for (std::size_t k : set.atoms()) sum += w[k];
  return sum;
}

MeasurableSet combine(const MeasureSpace& space, SetOp op, const MeasurableSet& a,
                      const std::optional<MeasurableSet>& b) {
  require_kind(space, a);
  if (op == SetOp::Complement) {
    if (b) throw Error(ErrorKind::Structural, "complement takes a single operand");
  } else {
    if (!b) throw Error(ErrorKind::Structural, "binary set operation needs two operands");
    require_kind(space, *b);
  }

  if (space.kind() == SpaceKind::Interval) {
    switch (op) {
      case SetOp::Union: {
        std::vector<Interval> all(a.intervals().begin(), a.intervals().end());
        all.insert(all.end(), b->intervals().begin(), b->intervals().end());
        return MeasurableSet::intervals(std::move(all));
      }
      case SetOp::Intersect:
        return MeasurableSet::intervals(intersect_intervals(a.intervals(), b->intervals()));
      case SetOp::Complement:
        return MeasurableSet::intervals(complement_intervals(a.intervals()));
      case SetOp::Difference:
        return MeasurableSet::intervals(
            intersect_intervals(a.intervals(), complement_intervals(b->intervals())));
    }
  }

  std::vector<std::size_t> out;
  const auto xa = a.atoms();
  switch (op) {
    case SetOp::Union:
      std::set_union(xa.begin(), xa.end(), b->atoms().begin(), b->atoms().end(),
                     std::back_inserter(out));
      break;
    case SetOp::Intersect:
      std::set_intersection(xa.begin(), xa.end(), b->atoms().begin(), b->atoms().end(),
                            std::back_inserter(out));
      break;
    case SetOp::Complement: {
      const auto all = MeasurableSet::whole(space);
      std::set_difference(all.atoms().begin(), all.atoms().end(), xa.begin(), xa.end(),
                          std::back_inserter(out));
      break;
    }
    case SetOp::Difference:
      std::set_difference(xa.begin(), xa.end(), b->atoms().begin(), b->atoms().end(),
                          std::back_inserter(out));
      break;
  }
  return MeasurableSet::atoms(std::move(out));
}

// --- Partition ---------------------------------------------------------------

Partition::Partition(MeasureSpace space, std::vector<MeasurableSet> cells)
    : space_(std::move(space)), cells_(std::move(cells)) {
  if (cells_.empty()) throw Error(ErrorKind::Structural, "partition needs at least one cell");
  for (const auto& c : cells_) require_kind(space_, c);
  // Throws unless the cells tile the space exactly.
  const auto layout = detail::layout_of(*this);
  double sum = 0.0;
  for (const auto& c : cells_) sum += measure(space_, c);
  if (std::abs(sum - space_.total_mass()) > 1e-12) {
    throw Error(ErrorKind::Structural, "partition cell measures do not add up to the total mass");
  }
  (void)layout;
}

Partition refine_common(const Partition& p, const Partition& q) {
  if (!(p.space() == q.space())) {
    throw Error(ErrorKind::Structural, "partitions live on different spaces");
  }
  const auto a = detail::layout_of(p);
  const auto b = detail::layout_of(q);
  const std::size_t nq = q.size();

  std::vector<std::vector<Interval>> pieces;
  std::vector<std::vector<std::size_t>> atoms;
  std::unordered_map<std::uint64_t, std::uint32_t> seen;

  auto lookup = [&](std::uint32_t i, std::uint32_t j) -> std::uint32_t {
    const std::uint64_t key = static_cast<std::uint64_t>(i) * nq + j;
    auto [it, inserted] = seen.try_emplace(key, static_cast<std::uint32_t>(pieces.size()));
    if (inserted) {
      pieces.emplace_back();
      atoms.emplace_back();
    }
    return it->second;
  };

  detail::overlay(p.space(), a, b,
                  [&](double, std::uint32_t i, std::uint32_t j, double lo, double hi) {
                    const auto id = lookup(i, j);
                    if (p.space().kind() == SpaceKind::Interval) {
                      pieces[id].push_back({lo, hi});
                    } else {
                      atoms[id].push_back(static_cast<std::size_t>(lo));
                    }
                  });

  std::vector<MeasurableSet> cells;
  cells.reserve(pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    cells.push_back(p.space().kind() == SpaceKind::Interval
                        ? MeasurableSet::intervals(std::move(pieces[k]))
                        : MeasurableSet::atoms(std::move(atoms[k])));
  }
  return Partition(p.space(), std::move(cells));
}

}  // namespace bochner
