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

#include "bochner/simple_map.hpp"

namespace bochner {

/// Integral of the norm of s - t.
double l1_distance(const SimpleMap& s, const SimpleMap& t);

/// Ky Fan distance inf{eps > 0 : mu(|s - t| >= eps) <= eps}, exact for
/// simple maps: the infimum is one of finitely many level heights or tail
/// masses of |s - t|.
double ky_fan_distance(const SimpleMap& s, const SimpleMap& t);

/// Slack of the three comparison inequalities between convergence in
/// measure and the L1-type distance. Each is >= 0 up to rounding.
struct InequalitySlack {
  double epsilon;
  double markov_slack;      // eps^-1 int|s-t| - mu(|s-t| >= eps)
  double truncation_slack;  // eps mu(Omega) + int|s-t| 1{|s-t| >= eps} - int|s-t|
  double triangle_slack;    // int|s-t| - |int s - int t|

  bool valid(double tolerance = 1e-12) const noexcept {
    return markov_slack >= -tolerance && truncation_slack >= -tolerance &&
           triangle_slack >= -tolerance;
  }
  double min_slack() const noexcept;
};

InequalitySlack inequality_audit(const SimpleMap& s, const SimpleMap& t, double epsilon);

}  // namespace bochner
