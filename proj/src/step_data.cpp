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

#include "step_data.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace bochner::detail {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_value(std::span<const Complex> v) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& z : v) {
    h = mix(h ^ std::bit_cast<std::uint64_t>(z.real()));
    h = mix(h ^ std::bit_cast<std::uint64_t>(z.imag()));
  }
  return h;
}

// One slot per piece in order, positive lengths, and first components with
// strictly monotone real parts: already canonical. Dense samples of monotone
// maps look like this and skip the hash pass.
bool distinct_run(const StepData& raw) {
  const std::size_t n = raw.slot.size();
  if (raw.kind != SpaceKind::Interval || n < 2 || raw.slot_count() != n) return false;
  for (std::size_t p = 0; p < n; ++p) {
    if (raw.slot[p] != p || !(raw.breaks[p + 1] > raw.breaks[p])) return false;
  }
  const bool up = raw.values[raw.dim].real() > raw.values[0].real();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    const double a = raw.values[p * raw.dim].real();
    const double b = raw.values[(p + 1) * raw.dim].real();
    if (up ? !(b > a) : !(b < a)) return false;
  }
  return true;
}

}  // namespace

StepData canonicalize(StepData raw) {
  const std::size_t dim = raw.dim;
  for (auto& z : raw.values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::Domain, "simple map values must be finite");
    }
    z = Complex(z.real() + 0.0, z.imag() + 0.0);  // -0 -> +0
  }

  if (distinct_run(raw)) return raw;

  StepData out;
  out.kind = raw.kind;
  out.dim = dim;

  std::vector<std::uint32_t> remap(raw.slot_count(), kUnset);
  std::size_t capacity = 16;
  while (capacity < 2 * std::min(raw.slot_count(), raw.piece_count()) + 2) capacity <<= 1;
  std::vector<std::uint32_t> table(capacity, kUnset);
  const std::size_t mask = capacity - 1;

  auto resolve = [&](std::uint32_t r) -> std::uint32_t {
    if (remap[r] != kUnset) return remap[r];
    const auto value = raw.slot_value(r);
    std::size_t pos = hash_value(value) & mask;
    while (table[pos] != kUnset) {
      const auto existing = out.slot_value(table[pos]);
      if (std::equal(existing.begin(), existing.end(), value.begin())) {
        return remap[r] = table[pos];
      }
      pos = (pos + 1) & mask;
    }
    const auto id = static_cast<std::uint32_t>(out.slot_count());
    out.values.insert(out.values.end(), value.begin(), value.end());
    table[pos] = id;
    return remap[r] = id;
  };

  if (raw.kind == SpaceKind::Discrete) {
    out.slot.resize(raw.slot.size());
    for (std::size_t k = 0; k < raw.slot.size(); ++k) out.slot[k] = resolve(raw.slot[k]);
    return out;
  }

  out.breaks.reserve(raw.breaks.size());
  out.slot.reserve(raw.slot.size());
  out.breaks.push_back(0.0);
  for (std::size_t p = 0; p < raw.slot.size(); ++p) {
    const double lo = raw.breaks[p];
    const double hi = raw.breaks[p + 1];
    if (!(hi > lo)) continue;
    const auto id = resolve(raw.slot[p]);
    if (!out.slot.empty() && out.slot.back() == id) {
      out.breaks.back() = hi;
    } else {
      out.slot.push_back(id);
      out.breaks.push_back(hi);
    }
  }
  return out;
}

std::vector<HeightMass> difference_profile(const MeasureSpace& space, const ValueSpace& values,
                                           const StepData& a, const StepData& b) {
  if (a.dim != b.dim || a.dim != values.dim()) {
    throw Error(ErrorKind::Structural, "difference of maps with different value dimensions");
  }
  std::vector<HeightMass> out;
  out.reserve(std::max(a.piece_count(), b.piece_count()) + 1);
  std::vector<Complex> diff(a.dim);
  overlay(space, a, b, [&](double mass, std::uint32_t i, std::uint32_t j, double, double) {
    const auto va = a.slot_value(i);
    const auto vb = b.slot_value(j);
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = va[c] - vb[c];
    out.push_back({values.norm_of(diff), mass});
  });
  return out;
}

std::vector<HeightMass> slot_norms(const MeasureSpace& space, const ValueSpace& values,
                                   const StepData& a) {
  std::vector<HeightMass> out(a.slot_count(), HeightMass{0.0, 0.0});
  for (std::size_t k = 0; k < out.size(); ++k) out[k].height = values.norm_of(a.slot_value(k));
  if (a.kind == SpaceKind::Interval) {
    // Sum lengths first so a cell's mass matches measure() of the cell.
    for (std::size_t p = 0; p < a.piece_count(); ++p) {
      out[a.slot[p]].mass += a.breaks[p + 1] - a.breaks[p];
    }
    for (auto& e : out) e.mass *= space.total_mass();
  } else {
    const auto w = space.weights();
    for (std::size_t p = 0; p < a.piece_count(); ++p) out[a.slot[p]].mass += w[p];
  }
  return out;
}

double l1_from_profile(std::span<const HeightMass> profile) {
  double sum = 0.0;
  for (const auto& e : profile) sum += e.height * e.mass;
  return sum;
}

double ky_fan_from_profile(std::vector<HeightMass> v) {
  std::erase_if(v, [](const HeightMass& e) { return !(e.height > 0.0) || !(e.mass > 0.0); });
  if (v.empty()) return 0.0;

  // Smallest height h with mass(height >= h) <= h; the predicate is monotone
  // in h, so a quickselect-style search over the heights finds it.
  double best = std::numeric_limits<double>::infinity();
  double above = 0.0;
  auto lo = v.begin();
  auto hi = v.end();
  std::uint64_t state = 0x2545f4914f6cdd1dULL;
  while (lo != hi) {
    // Pseudo-random pivot: sampled profiles are periodic, which defeats a
    // fixed pivot position.
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    const double pivot = (lo + static_cast<std::ptrdiff_t>(state % static_cast<std::uint64_t>(hi - lo)))->height;
    auto mid1 = std::partition(lo, hi, [&](const HeightMass& e) { return e.height > pivot; });
    auto mid2 = std::partition(mid1, hi, [&](const HeightMass& e) { return e.height == pivot; });
    double greater = 0.0, equal = 0.0;
    for (auto it = lo; it != mid1; ++it) greater += it->mass;
    for (auto it = mid1; it != mid2; ++it) equal += it->mass;
    if (above + greater + equal <= pivot) {
      best = pivot;
      above += greater + equal;
      lo = mid2;
    } else {
      hi = mid1;
    }
  }

  double tail = 0.0;
  double next = 0.0;
  for (const auto& e : v) {
    if (e.height >= best) {
      tail += e.mass;
    } else {
      next = std::max(next, e.height);
    }
  }
  return std::max(tail, next);
}

StepData layout_of(const Partition& partition) {
  const auto& space = partition.space();
  StepData out;
  out.kind = space.kind();
  out.dim = 1;
  out.values.assign(partition.size(), Complex{});

  if (space.kind() == SpaceKind::Discrete) {
    out.slot.assign(space.atom_count(), kUnset);
    for (std::size_t c = 0; c < partition.size(); ++c) {
      for (std::size_t atom : partition.cells()[c].atoms()) {
        if (out.slot[atom] != kUnset) {
          throw Error(ErrorKind::Structural,
                      "partition cells overlap at atom " + std::to_string(atom));
        }
        out.slot[atom] = static_cast<std::uint32_t>(c);
      }
    }
    for (std::size_t atom = 0; atom < out.slot.size(); ++atom) {
      if (out.slot[atom] == kUnset) {
        throw Error(ErrorKind::Structural,
                    "partition does not cover atom " + std::to_string(atom));
      }
    }
    return out;
  }

  struct Piece {
    double lo, hi;
    std::uint32_t cell;
  };
  std::vector<Piece> pieces;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    for (const auto& iv : partition.cells()[c].intervals()) {
      pieces.push_back({iv.lo, iv.hi, static_cast<std::uint32_t>(c)});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  double cur = 0.0;
  out.breaks.push_back(0.0);
  for (const auto& p : pieces) {
    if (p.lo != cur) {
      throw Error(ErrorKind::Structural,
                  p.lo < cur ? "partition cells overlap" : "partition cells leave a gap");
    }
    out.slot.push_back(p.cell);
    out.breaks.push_back(p.hi);
    cur = p.hi;
  }
  if (cur != 1.0) throw Error(ErrorKind::Structural, "partition cells do not reach 1");
  return out;
}

std::vector<MeasurableSet> cells_of(const StepData& data) {
  const std::size_t n = data.slot_count();
  std::vector<MeasurableSet> cells;
  cells.reserve(n);
  if (data.kind == SpaceKind::Interval) {
    std::vector<std::vector<Interval>> pieces(n);
    for (std::size_t p = 0; p < data.piece_count(); ++p) {
      pieces[data.slot[p]].push_back({data.breaks[p], data.breaks[p + 1]});
    }
    for (auto& iv : pieces) cells.push_back(MeasurableSet::intervals(std::move(iv)));
  } else {
    std::vector<std::vector<std::size_t>> atoms(n);
    for (std::size_t p = 0; p < data.piece_count(); ++p) atoms[data.slot[p]].push_back(p);
    for (auto& a : atoms) cells.push_back(MeasurableSet::atoms(std::move(a)));
  }
  return cells;
}

}  // namespace bochner::detail
