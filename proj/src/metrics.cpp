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

#include "bochner/metrics.hpp"

#include <algorithm>

#include "bochner/error.hpp"
#include "step_data.hpp"

namespace bochner {

namespace {

std::vector<detail::HeightMass> profile(const SimpleMap& s, const SimpleMap& t) {
  if (!(s.space() == t.space())) throw Error(ErrorKind::Structural, "maps live on different measure spaces");
  if (!(s.value_space() == t.value_space())) {
    throw Error(ErrorKind::Structural, "maps take values in different spaces");
  }
  return detail::difference_profile(s.space(), s.value_space(), s.data(), t.data());
}

}  // namespace

double l1_distance(const SimpleMap& s, const SimpleMap& t) {
  return detail::l1_from_profile(profile(s, t));
}

double ky_fan_distance(const SimpleMap& s, const SimpleMap& t) {
  return detail::ky_fan_from_profile(profile(s, t));
}

double InequalitySlack::min_slack() const noexcept {
  return std::min({markov_slack, truncation_slack, triangle_slack});
}

InequalitySlack inequality_audit(const SimpleMap& s, const SimpleMap& t, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Domain, "epsilon must be positive");
  const auto p = profile(s, t);
  double l1 = 0.0;
  double tail_mass = 0.0;
  double tail_integral = 0.0;
  for (const auto& e : p) {
    l1 += e.height * e.mass;
    if (e.height >= epsilon) {
      tail_mass += e.mass;
      tail_integral += e.height * e.mass;
    }
  }
  const auto is = integrate_simple(s);
  const auto it = integrate_simple(t);
  const double gap = norm(s.value_space(), combine(s.value_space(), 1.0, is, -1.0, it));

  InequalitySlack out{};
  out.epsilon = epsilon;
  out.markov_slack = l1 / epsilon - tail_mass;
  out.truncation_slack = epsilon * s.space().total_mass() + tail_integral - l1;
  out.triangle_slack = l1 - gap;
  return out;
}

}  // namespace bochner
