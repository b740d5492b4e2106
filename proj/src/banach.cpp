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

#include "bochner/banach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bochner/error.hpp"

namespace bochner {

ValueSpace ValueSpace::vector(std::size_t dim, NormKind norm) {
  if (dim == 0) throw Error(ErrorKind::Domain, "vector value space needs dim >= 1");
  return ValueSpace(dim, norm);
}

double ValueSpace::norm_of(std::span<const Complex> v) const noexcept {
  if (is_scalar()) return std::abs(v[0]);
  switch (norm_) {
    case NormKind::One: {
      double sum = 0.0;
      for (const auto& z : v) sum += std::abs(z);
      return sum;
    }
    case NormKind::Two: {
      double sum = 0.0;
      for (const auto& z : v) sum += std::norm(z);
      if (sum >= std::numeric_limits<double>::min() && sum <= std::numeric_limits<double>::max()) {
        return std::sqrt(sum);
      }
      // Squares under- or overflowed: rescale by the largest modulus.
      double scale = 0.0;
      for (const auto& z : v) scale = std::max(scale, std::abs(z));
      if (scale == 0.0 || !std::isfinite(scale)) return scale;
      sum = 0.0;
      for (const auto& z : v) sum += std::norm(z / scale);
      return scale * std::sqrt(sum);
    }
    case NormKind::Inf: {
      double best = 0.0;
      for (const auto& z : v) best = std::max(best, std::abs(z));
      return best;
    }
  }
  return 0.0;
}

namespace {

void require_member(const ValueSpace& space, const BanachElement& v) {
  if (v.dim() != space.dim()) {
    throw Error(ErrorKind::Structural,
                "element has " + std::to_string(v.dim()) +
                    " components, value space expects " +
                    std::to_string(space.dim()));
  }
}

}  // namespace

double norm(const ValueSpace& space, const BanachElement& v) {
  require_member(space, v);
  return space.norm_of(v.components());
}

BanachElement combine(const ValueSpace& space, Complex alpha,
                      const BanachElement& v, Complex beta,
                      const BanachElement& w) {
  require_member(space, v);
  require_member(space, w);
  std::vector<Complex> out(v.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * v[i] + beta * w[i];
  return BanachElement(std::move(out));
}

}  // namespace bochner
