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

#include "bochner/simple_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bochner/error.hpp"
#include "step_data.hpp"

namespace bochner {

namespace {

void require_values(const ValueSpace& vs, const BanachElement& v) {
  if (v.dim() != vs.dim()) {
    throw Error(ErrorKind::Structural, "value with " + std::to_string(v.dim()) +
                                           " components in a space of dimension " +
                                           std::to_string(vs.dim()));
  }
}

void append(detail::StepData& data, const BanachElement& v) {
  data.values.insert(data.values.end(), v.components().begin(), v.components().end());
}

void require_same_spaces(const SimpleMap& s, const SimpleMap& t) {
  if (!(s.space() == t.space())) throw Error(ErrorKind::Structural, "maps live on different measure spaces");
  if (!(s.value_space() == t.value_space())) {
    throw Error(ErrorKind::Structural, "maps take values in different spaces");
  }
}

}  // namespace

SimpleMap::SimpleMap(MeasureSpace space, ValueSpace value_space, detail::StepData data)
    : space_(std::move(space)), value_space_(value_space) {
  if (data.kind != space_.kind()) throw Error(ErrorKind::Structural, "layout kind does not match the space");
  if (data.dim != value_space_.dim()) {
    throw Error(ErrorKind::Structural, "layout dimension does not match the value space");
  }
  if (data.kind == SpaceKind::Discrete) {
    if (data.slot.size() != space_.atom_count()) {
      throw Error(ErrorKind::Structural, "discrete layout must assign every atom");
    }
  } else {
    if (data.breaks.size() != data.slot.size() + 1 || data.breaks.front() != 0.0 ||
        data.breaks.back() != 1.0) {
      throw Error(ErrorKind::Structural, "interval layout must run from 0 to 1");
    }
    for (std::size_t p = 0; p + 1 < data.breaks.size(); ++p) {
      if (!(data.breaks[p] <= data.breaks[p + 1])) {
        throw Error(ErrorKind::Structural, "interval breaks must be nondecreasing");
      }
    }
  }
  for (auto s : data.slot) {
    if (s >= data.slot_count()) throw Error(ErrorKind::Structural, "layout refers to a missing value");
  }
  data_ = std::make_shared<const detail::StepData>(detail::canonicalize(std::move(data)));
}

SimpleMap::SimpleMap(const Partition& partition, ValueSpace value_space,
                     const std::vector<BanachElement>& values)
    : SimpleMap(partition.space(), value_space, [&] {
        if (values.size() != partition.size()) {
          throw Error(ErrorKind::Structural, "one value per partition cell is required");
        }
        auto data = detail::layout_of(partition);
        data.dim = value_space.dim();
        data.values.clear();
        for (const auto& v : values) {
          require_values(value_space, v);
          append(data, v);
        }
        return data;
      }()) {}

SimpleMap SimpleMap::constant(MeasureSpace space, ValueSpace value_space, const BanachElement& c) {
  require_values(value_space, c);
  detail::StepData data;
  data.kind = space.kind();
  data.dim = value_space.dim();
  append(data, c);
  if (space.kind() == SpaceKind::Interval) {
    data.breaks = {0.0, 1.0};
    data.slot = {0};
  } else {
    data.slot.assign(space.atom_count(), 0);
  }
  return SimpleMap(std::move(space), value_space, std::move(data));
}

SimpleMap SimpleMap::step(MeasureSpace space, ValueSpace value_space, std::vector<double> breaks,
                          const std::vector<BanachElement>& values) {
  if (space.kind() != SpaceKind::Interval) {
    throw Error(ErrorKind::Structural, "step maps need an interval space");
  }
  if (breaks.size() != values.size() + 1) {
    throw Error(ErrorKind::Structural, "step map needs one more break than values");
  }
  detail::StepData data;
  data.kind = SpaceKind::Interval;
  data.dim = value_space.dim();
  data.breaks = std::move(breaks);
  for (std::size_t k = 0; k < values.size(); ++k) {
    require_values(value_space, values[k]);
    append(data, values[k]);
    data.slot.push_back(static_cast<std::uint32_t>(k));
  }
  return SimpleMap(std::move(space), value_space, std::move(data));
}

SimpleMap SimpleMap::step(MeasureSpace space, std::vector<double> breaks,
                          const std::vector<double>& values) {
  std::vector<BanachElement> v;
  v.reserve(values.size());
  for (double x : values) v.push_back(BanachElement{Complex(x, 0.0)});
  return step(std::move(space), ValueSpace::scalar(), std::move(breaks), v);
}

SimpleMap SimpleMap::on_atoms(MeasureSpace space, ValueSpace value_space,
                              const std::vector<BanachElement>& values) {
  if (space.kind() != SpaceKind::Discrete) {
    throw Error(ErrorKind::Structural, "atom-wise maps need a discrete space");
  }
  if (values.size() != space.atom_count()) {
    throw Error(ErrorKind::Structural, "one value per atom is required");
  }
  detail::StepData data;
  data.kind = SpaceKind::Discrete;
  data.dim = value_space.dim();
  for (std::size_t k = 0; k < values.size(); ++k) {
    require_values(value_space, values[k]);
    append(data, values[k]);
    data.slot.push_back(static_cast<std::uint32_t>(k));
  }
  return SimpleMap(std::move(space), value_space, std::move(data));
}

std::size_t SimpleMap::cell_count() const noexcept { return data_->slot_count(); }

BanachElement SimpleMap::value(std::size_t cell) const {
  if (cell >= cell_count()) throw Error(ErrorKind::Domain, "cell index out of range");
  const auto v = data_->slot_value(cell);
  return BanachElement(std::vector<Complex>(v.begin(), v.end()));
}

std::vector<MeasurableSet> SimpleMap::cells() const { return detail::cells_of(*data_); }

Partition SimpleMap::partition() const { return Partition(space_, cells()); }

bool SimpleMap::operator==(const SimpleMap& other) const {
  if (!(space_ == other.space_) || !(value_space_ == other.value_space_)) return false;
  const auto& a = *data_;
  const auto& b = *other.data_;
  return a.breaks == b.breaks && a.slot == b.slot && a.values == b.values;
}

BanachElement integrate_simple(const SimpleMap& s) {
  const auto& d = s.data();
  const auto cells = detail::slot_norms(s.space(), s.value_space(), d);
  std::vector<Complex> sum(d.dim, Complex{});
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto v = d.slot_value(k);
    for (std::size_t c = 0; c < d.dim; ++c) sum[c] += cells[k].mass * v[c];
  }
  return BanachElement(std::move(sum));
}

double norm_integral(const SimpleMap& s) {
  const auto cells = detail::slot_norms(s.space(), s.value_space(), s.data());
  return detail::l1_from_profile(cells);
}

SimpleMap norm_map(const SimpleMap& s) {
  const auto& d = s.data();
  detail::StepData out;
  out.kind = d.kind;
  out.dim = 1;
  out.breaks = d.breaks;
  out.slot = d.slot;
  out.values.reserve(d.slot_count());
  for (std::size_t k = 0; k < d.slot_count(); ++k) {
    out.values.emplace_back(s.value_space().norm_of(d.slot_value(k)), 0.0);
  }
  return SimpleMap(s.space(), ValueSpace::scalar(), std::move(out));
}

SimpleMap linear_combine(Complex alpha, const SimpleMap& s, Complex beta, const SimpleMap& t) {
  require_same_spaces(s, t);
  const auto& a = s.data();
  const auto& b = t.data();
  detail::StepData out;
  out.kind = a.kind;
  out.dim = a.dim;
  if (a.kind == SpaceKind::Interval) out.breaks.push_back(0.0);
  out.values.reserve(std::max(a.piece_count(), b.piece_count()) * a.dim);
  detail::overlay(s.space(), a, b, [&](double, std::uint32_t i, std::uint32_t j, double, double hi) {
    const auto va = a.slot_value(i);
    const auto vb = b.slot_value(j);
    for (std::size_t c = 0; c < a.dim; ++c) out.values.push_back(alpha * va[c] + beta * vb[c]);
    out.slot.push_back(static_cast<std::uint32_t>(out.slot.size()));
    if (a.kind == SpaceKind::Interval) out.breaks.push_back(hi);
  });
  return SimpleMap(s.space(), s.value_space(), std::move(out));
}

SimpleMap restrict(const SimpleMap& s, const MeasurableSet& set) {
  if (set.kind() != s.space().kind()) {
    throw Error(ErrorKind::Structural, "restriction set does not belong to the map's space");
  }
  // Indicator layout: slot 1 inside the set, slot 0 outside.
  detail::StepData ind;
  ind.kind = set.kind();
  ind.values.assign(2, Complex{});
  if (set.kind() == SpaceKind::Interval) {
    double cur = 0.0;
    ind.breaks.push_back(0.0);
    for (const auto& iv : set.intervals()) {
      if (iv.lo > cur) {
        ind.slot.push_back(0);
        ind.breaks.push_back(iv.lo);
      }
      ind.slot.push_back(1);
      ind.breaks.push_back(iv.hi);
      cur = iv.hi;
    }
    if (cur < 1.0) {
      ind.slot.push_back(0);
      ind.breaks.push_back(1.0);
    }
  } else {
    ind.slot.assign(s.space().atom_count(), 0);
    for (std::size_t atom : set.atoms()) {
      if (atom >= ind.slot.size()) throw Error(ErrorKind::Structural, "atom outside the space");
      ind.slot[atom] = 1;
    }
  }

  const auto& a = s.data();
  detail::StepData out;
  out.kind = a.kind;
  out.dim = a.dim;
  out.values = a.values;
  const auto zero_slot = static_cast<std::uint32_t>(a.slot_count());
  out.values.insert(out.values.end(), a.dim, Complex{});
  if (a.kind == SpaceKind::Interval) out.breaks.push_back(0.0);
  detail::overlay(s.space(), a, ind, [&](double, std::uint32_t i, std::uint32_t inside, double, double hi) {
    out.slot.push_back(inside ? i : zero_slot);
    if (a.kind == SpaceKind::Interval) out.breaks.push_back(hi);
  });
  return SimpleMap(s.space(), s.value_space(), std::move(out));
}

BanachElement evaluate(const SimpleMap& s, const Point& x) {
  const auto& d = s.data();
  std::size_t slot = 0;
  if (s.space().kind() == SpaceKind::Interval) {
    const double* px = std::get_if<double>(&x);
    if (!px) throw Error(ErrorKind::Domain, "interval maps are evaluated at real points");
    if (!(*px >= 0.0 && *px < 1.0)) {
      throw Error(ErrorKind::Domain, "point " + std::to_string(*px) + " lies outside [0,1)");
    }
    const auto it = std::upper_bound(d.breaks.begin(), d.breaks.end(), *px);
    slot = d.slot[static_cast<std::size_t>(it - d.breaks.begin()) - 1];
  } else {
    const std::size_t* atom = std::get_if<std::size_t>(&x);
    if (!atom) throw Error(ErrorKind::Domain, "discrete maps are evaluated at atom indices");
    if (*atom >= d.slot.size()) {
      throw Error(ErrorKind::Domain, "atom " + std::to_string(*atom) + " lies outside the space");
    }
    slot = d.slot[*atom];
  }
  const auto v = d.slot_value(slot);
  return BanachElement(std::vector<Complex>(v.begin(), v.end()));
}

}  // namespace bochner
