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

#include "bochner/worst_subset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "bochner/error.hpp"
#include "step_data.hpp"

namespace bochner {

namespace {

struct CellWeight {
  std::size_t cell;
  double value;
  double mass;
};

// Cells with positive value in decreasing value order, ties by cell order.
std::vector<CellWeight> ranked_cells(std::span<const detail::HeightMass> cells) {
  std::vector<CellWeight> out;
  out.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k].height > 0.0) out.push_back({k, cells[k].height, cells[k].mass});
  }
  if (out.size() < 4096) {
    std::stable_sort(out.begin(), out.end(),
                     [](const CellWeight& a, const CellWeight& b) { return a.value > b.value; });
    return out;
  }
  // Stable LSD radix sort on the bit patterns, which order like the values
  // for positive doubles; complemented for decreasing order.
  struct Key {
    std::uint64_t bits;
    std::uint32_t pos;
  };
  std::vector<Key> keys(out.size());
  std::vector<Key> tmp(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    keys[i] = {~std::bit_cast<std::uint64_t>(out[i].value), static_cast<std::uint32_t>(i)};
  }
  for (int shift = 0; shift < 64; shift += 11) {
    std::vector<std::size_t> count(2049, 0);
    for (const auto& k : keys) ++count[((k.bits >> shift) & 0x7ff) + 1];
    if (std::find(count.begin(), count.end(), keys.size()) != count.end()) continue;
    for (std::size_t d = 1; d < count.size(); ++d) count[d] += count[d - 1];
    for (const auto& k : keys) tmp[count[(k.bits >> shift) & 0x7ff]++] = k;
    keys.swap(tmp);
  }
  std::vector<CellWeight> sorted(out.size());
  for (std::size_t i = 0; i < keys.size(); ++i) sorted[i] = out[keys[i].pos];
  out.swap(sorted);
  return out;
}

struct Atom {
  std::size_t index;
  double value;
  double weight;
};

// Atoms that can contribute: positive value and positive weight, ascending.
std::vector<Atom> relevant_atoms(const MeasureSpace& space, const detail::StepData& d,
                                 std::span<const double> slot_values) {
  std::vector<Atom> out;
  const auto w = space.weights();
  for (std::size_t k = 0; k < d.slot.size(); ++k) {
    const double v = slot_values[d.slot[k]];
    if (v > 0.0 && w[k] > 0.0) out.push_back({k, v, w[k]});
  }
  return out;
}

// Subset sums in ascending atom order: entry[mask] = entry[mask - top] + term(top).
template <class Term>
std::vector<double> subset_sums(std::size_t n, Term term) {
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const int top = 63 - std::countl_zero(static_cast<std::uint64_t>(mask));
    sums[mask] = sums[mask ^ (std::size_t{1} << top)] + term(static_cast<std::size_t>(top));
  }
  return sums;
}

}  // namespace

WorstSubset worst_subset(const MeasureSpace& space, const SimpleMap& weights_map, double delta) {
  if (!(weights_map.space() == space)) {
    throw Error(ErrorKind::Structural, "weights map lives on a different space");
  }
  if (!weights_map.value_space().is_scalar()) {
    throw Error(ErrorKind::Structural, "weights map must be scalar");
  }
  if (!(delta > 0.0)) throw Error(ErrorKind::Domain, "delta must be positive");
  const auto& d = weights_map.data();
  std::vector<double> slot_values(d.slot_count());
  for (std::size_t k = 0; k < slot_values.size(); ++k) {
    const Complex z = d.values[k];
    if (z.imag() != 0.0 || z.real() < 0.0) {
      throw Error(ErrorKind::Domain, "weights map values must be real and nonnegative");
    }
    slot_values[k] = z.real();
  }

  if (space.kind() == SpaceKind::Interval) {
    auto cells = detail::slot_norms(space, weights_map.value_space(), d);
    const auto ranked = ranked_cells(cells);
    double value = 0.0;
    double taken = 0.0;
    std::vector<Interval> chosen;
    const auto cell_sets = detail::cells_of(d);
    for (const auto& c : ranked) {
      if (taken + c.mass <= delta) {
        value += c.value * c.mass;
        taken += c.mass;
        const auto iv = cell_sets[c.cell].intervals();
        chosen.insert(chosen.end(), iv.begin(), iv.end());
        continue;
      }
      // Boundary cell: take a leading sub-interval of the remaining mass.
      const double rest = delta - taken;
      value += c.value * rest;
      double length = space.total_mass() > 0.0 ? rest / space.total_mass() : 0.0;
      for (const auto& iv : cell_sets[c.cell].intervals()) {
        if (length <= 0.0) break;
        const double hi = std::min(iv.hi, iv.lo + length);
        chosen.push_back({iv.lo, hi});
        length -= hi - iv.lo;
      }
      break;
    }
    return {MeasurableSet::intervals(std::move(chosen)), value, true};
  }

  const auto atoms = relevant_atoms(space, d, slot_values);
  if (atoms.size() <= kExhaustiveAtomLimit) {
    const auto mass = subset_sums(atoms.size(), [&](std::size_t i) { return atoms[i].weight; });
    const auto gain =
        subset_sums(atoms.size(), [&](std::size_t i) { return atoms[i].value * atoms[i].weight; });
    std::size_t best = 0;
    for (std::size_t mask = 1; mask < mass.size(); ++mask) {
      if (mass[mask] <= delta && gain[mask] > gain[best]) best = mask;
    }
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (best >> i & 1U) chosen.push_back(atoms[i].index);
    }
    return {MeasurableSet::atoms(std::move(chosen)), gain[best], true};
  }

  auto order = atoms;
  std::stable_sort(order.begin(), order.end(),
                   [](const Atom& a, const Atom& b) { return a.value > b.value; });
  double value = 0.0;
  double taken = 0.0;
  std::vector<std::size_t> chosen;
  for (const auto& a : order) {
    if (taken + a.weight <= delta) {
      taken += a.weight;
      value += a.value * a.weight;
      chosen.push_back(a.index);
    }
  }
  return {MeasurableSet::atoms(std::move(chosen)), value, false};
}

ModulusCurve::ModulusCurve(const SimpleMap& s) {
  const auto& d = s.data();
  const auto cells = detail::slot_norms(s.space(), s.value_space(), d);

  if (s.space().kind() == SpaceKind::Interval) {
    const auto ranked = ranked_cells(cells);
    norm_.reserve(ranked.size());
    prefix_mass_.reserve(ranked.size());
    prefix_value_.reserve(ranked.size());
    for (const auto& c : ranked) {
      norm_.push_back(c.value);
      prefix_mass_.push_back((prefix_mass_.empty() ? 0.0 : prefix_mass_.back()) + c.mass);
      prefix_value_.push_back((prefix_value_.empty() ? 0.0 : prefix_value_.back()) +
                              c.value * c.mass);
    }
    return;
  }

  fractional_ = false;
  std::vector<double> slot_values(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) slot_values[k] = cells[k].height;
  const auto atoms = relevant_atoms(s.space(), d, slot_values);

  std::vector<std::pair<double, double>> staircase;  // (mass, value)
  if (atoms.size() <= kExhaustiveAtomLimit) {
    const auto mass = subset_sums(atoms.size(), [&](std::size_t i) { return atoms[i].weight; });
    const auto gain =
        subset_sums(atoms.size(), [&](std::size_t i) { return atoms[i].value * atoms[i].weight; });
    staircase.reserve(mass.size());
    for (std::size_t mask = 0; mask < mass.size(); ++mask) staircase.emplace_back(mass[mask], gain[mask]);
    std::sort(staircase.begin(), staircase.end());
  } else {
    exact_ = false;
    // Greedy answers are not a single chain in delta, so evaluate lazily.
    auto order = atoms;
    std::stable_sort(order.begin(), order.end(),
                     [](const Atom& a, const Atom& b) { return a.value > b.value; });
    for (const auto& a : order) {
      norm_.push_back(a.value);
      prefix_mass_.push_back(a.weight);
    }
    return;
  }
  for (const auto& [m, v] : staircase) {
    prefix_mass_.push_back(m);
    prefix_value_.push_back(prefix_value_.empty() ? v : std::max(prefix_value_.back(), v));
  }
}

double ModulusCurve::operator()(double delta) const {
  if (fractional_) {
    // Number of whole cells that fit.
    const auto j = static_cast<std::size_t>(
        std::upper_bound(prefix_mass_.begin(), prefix_mass_.end(), delta) - prefix_mass_.begin());
    double value = j == 0 ? 0.0 : prefix_value_[j - 1];
    if (j < norm_.size()) value += norm_[j] * (delta - (j == 0 ? 0.0 : prefix_mass_[j - 1]));
    return value;
  }
  if (exact_) {
    const auto it = std::upper_bound(prefix_mass_.begin(), prefix_mass_.end(), delta);
    if (it == prefix_mass_.begin()) return 0.0;
    return prefix_value_[static_cast<std::size_t>(it - prefix_mass_.begin()) - 1];
  }
  double taken = 0.0;
  double value = 0.0;
  for (std::size_t k = 0; k < norm_.size(); ++k) {
    if (taken + prefix_mass_[k] <= delta) {
      taken += prefix_mass_[k];
      value += norm_[k] * prefix_mass_[k];
    }
  }
  return value;
}

ModulusTable modulus_on_grid(const SimpleMap& s, std::span<const double> grid) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] > grid[i + 1])) throw Error(ErrorKind::Domain, "grid must be strictly descending");
  }
  ModulusTable out{std::vector<double>(grid.size(), 0.0), true};
  if (s.space().kind() != SpaceKind::Interval) {
    const ModulusCurve curve(s);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = curve(grid[i]);
    out.exact = curve.exact();
    return out;
  }
  auto items = detail::slot_norms(s.space(), s.value_space(), s.data());
  std::erase_if(items, [](const detail::HeightMass& e) { return !(e.height > 0.0) || !(e.mass > 0.0); });

  // Items in [0, hi) hold every candidate for the current delta, and the
  // candidates for a smaller delta are among them.
  std::size_t hi = items.size();
  std::uint64_t state = 0x2545f4914f6cdd1dULL;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double delta = grid[g];
    std::size_t lo = 0;
    std::size_t end = hi;
    double mass = 0.0;
    double value = 0.0;
    double result = -1.0;
    while (lo < end) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      const double pivot = items[lo + state % (end - lo)].height;
      // Three-way partition of [lo, end): above, equal, below the pivot.
      std::size_t gt = lo;
      std::size_t i = lo;
      std::size_t lt = end;
      while (i < lt) {
        if (items[i].height > pivot) {
          std::swap(items[i++], items[gt++]);
        } else if (items[i].height < pivot) {
          std::swap(items[i], items[--lt]);
        } else {
          ++i;
        }
      }
      double m_gt = 0.0;
      double v_gt = 0.0;
      for (std::size_t k = lo; k < gt; ++k) {
        m_gt += items[k].mass;
        v_gt += items[k].height * items[k].mass;
      }
      if (mass + m_gt >= delta) {
        end = gt;
        continue;
      }
      mass += m_gt;
      value += v_gt;
      double m_eq = 0.0;
      for (std::size_t k = gt; k < lt; ++k) m_eq += items[k].mass;
      if (mass + m_eq >= delta) {
        result = value + pivot * (delta - mass);
        end = lt;
        break;
      }
      mass += m_eq;
      value += pivot * m_eq;
      lo = lt;
    }
    out.values[g] = result >= 0.0 ? result : value;
    hi = end;
  }
  return out;
}

}  // namespace bochner
