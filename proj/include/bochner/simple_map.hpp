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
#include <span>
#include <variant>
#include <vector>

#include "bochner/banach.hpp"
#include "bochner/measure.hpp"

namespace bochner {

namespace detail {
struct StepData;
}

/// A point of the underlying space: x in [0,1) or an atom index.
using Point = std::variant<double, std::size_t>;

/// A simple map: finitely many values, one per cell of a measurable
/// partition. Always canonical: cells with equal values are merged and cells
/// are ordered by their lowest point, so equal maps compare equal.
class SimpleMap {
 public:
  SimpleMap(const Partition& partition, ValueSpace value_space,
            const std::vector<BanachElement>& values);

  static SimpleMap constant(MeasureSpace space, ValueSpace value_space, const BanachElement& c);
  /// Interval space: value k on [breaks[k], breaks[k+1]); breaks run 0..1.
  static SimpleMap step(MeasureSpace space, ValueSpace value_space, std::vector<double> breaks,
                        const std::vector<BanachElement>& values);
  /// Discrete space: one value per atom.
  static SimpleMap on_atoms(MeasureSpace space, ValueSpace value_space,
                            const std::vector<BanachElement>& values);
  /// Scalar map from real values, convenience for tests and campaigns.
  static SimpleMap step(MeasureSpace space, std::vector<double> breaks,
                        const std::vector<double>& values);

  const MeasureSpace& space() const noexcept { return space_; }
  const ValueSpace& value_space() const noexcept { return value_space_; }
  std::size_t cell_count() const noexcept;
  BanachElement value(std::size_t cell) const;
  std::vector<MeasurableSet> cells() const;
  Partition partition() const;

  const detail::StepData& data() const noexcept { return *data_; }

  /// Wraps an already canonical layout.
  SimpleMap(MeasureSpace space, ValueSpace value_space, detail::StepData data);

  bool operator==(const SimpleMap& other) const;

 private:
  MeasureSpace space_;
  ValueSpace value_space_;
  std::shared_ptr<const detail::StepData> data_;
};

/// Sum over cells of mu(A_i) * s_i.
BanachElement integrate_simple(const SimpleMap& s);

/// Pointwise norm as a scalar map.
SimpleMap norm_map(const SimpleMap& s);

/// alpha*s + beta*t on the common refinement.
SimpleMap linear_combine(Complex alpha, const SimpleMap& s, Complex beta, const SimpleMap& t);

/// s * 1_A.
SimpleMap restrict(const SimpleMap& s, const MeasurableSet& a);

BanachElement evaluate(const SimpleMap& s, const Point& x);

/// Integral of the norm, the quantity every modulus and distance is built on.
double norm_integral(const SimpleMap& s);

}  // namespace bochner
