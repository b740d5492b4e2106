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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bochner {

using Complex = std::complex<double>;

enum class NormKind { One, Two, Inf };

/// The value space E: complex scalars, or C^dim under a fixed norm.
class ValueSpace {
 public:
  static ValueSpace scalar() { return ValueSpace(0, NormKind::Two); }
  static ValueSpace vector(std::size_t dim, NormKind norm);

  bool is_scalar() const noexcept { return dim_ == 0; }
  std::size_t dim() const noexcept { return dim_ == 0 ? 1 : dim_; }
  NormKind norm_kind() const noexcept { return norm_; }

  /// Unchecked norm of a component span of length dim().
  double norm_of(std::span<const Complex> v) const noexcept;

  bool operator==(const ValueSpace&) const = default;

 private:
  ValueSpace(std::size_t dim, NormKind norm) : dim_(dim), norm_(norm) {}

  std::size_t dim_;  // 0 marks the scalar space
  NormKind norm_;
};

class BanachElement {
 public:
  BanachElement() = default;
  explicit BanachElement(std::vector<Complex> components)
      : components_(std::move(components)) {}
  BanachElement(std::initializer_list<Complex> components)
      : components_(components) {}

  static BanachElement zero(std::size_t dim) {
    return BanachElement(std::vector<Complex>(dim, Complex{}));
  }

  std::size_t dim() const noexcept { return components_.size(); }
  std::span<const Complex> components() const noexcept { return components_; }
  const Complex& operator[](std::size_t i) const { return components_[i]; }

  bool operator==(const BanachElement&) const = default;

 private:
  std::vector<Complex> components_;
};

double norm(const ValueSpace& space, const BanachElement& v);

/// alpha*v + beta*w, componentwise.
BanachElement combine(const ValueSpace& space, Complex alpha,
                      const BanachElement& v, Complex beta,
                      const BanachElement& w);

}  // namespace bochner
