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
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "bochner/scheme.hpp"
#include "bochner/simple_map.hpp"

namespace bochner {

enum class BoundKind { Exact, Lower, Upper };

struct UniformlyIntegrable {
  /// (epsilon, largest grid delta with modulus(delta) < epsilon)
  std::vector<std::pair<double, double>> table;
};

struct FailsAtResolution {
  double epsilon;
  double floor;
};

/// Modulus delta -> sup over the family and mu(A) <= delta of int |s| 1_A,
/// tabulated on a descending delta grid. horizon is 0 for finite families.
struct UIModulusReport {
  std::vector<double> delta_grid;
  std::vector<double> modulus_values;
  std::vector<BoundKind> bounds;
  std::vector<bool> resolved;
  std::vector<double> epsilon_grid;
  std::variant<UniformlyIntegrable, FailsAtResolution> verdict;
  std::int64_t horizon = 0;
  bool stabilized = true;

  bool uniformly_integrable() const noexcept {
    return std::holds_alternative<UniformlyIntegrable>(verdict);
  }
};

/// 1, 1/2, ..., 2^-k.
std::vector<double> geometric_delta_grid(int k = 20);

double ui_modulus(const std::vector<SimpleMap>& family, double delta);

UIModulusReport ui_certificate(const std::vector<SimpleMap>& family,
                               const std::vector<double>& epsilon_grid,
                               const std::vector<double>& delta_grid);

/// Greedy farthest-point net: indices into the family, starting from 0, so
/// that every member lies within l1 distance epsilon of a chosen one.
std::vector<std::size_t> epsilon_net_indices(const std::vector<SimpleMap>& family, double epsilon);
std::vector<SimpleMap> epsilon_net(const std::vector<SimpleMap>& family, double epsilon);

/// Modulus bound |alpha| m1 + |beta| m2 for {alpha s1 + beta s2}.
UIModulusReport linear_combination_ui(const UIModulusReport& r1, const UIModulusReport& r2,
                                      Complex alpha, Complex beta);

/// Modulus of the first `horizon` members. A grid point counts as resolved
/// when the first horizon/2 members already give (nearly) the same value;
/// the verdict only uses resolved points.
UIModulusReport sequence_ui_probe(const ApproximationScheme& scheme, std::int64_t horizon,
                                  const std::vector<double>& delta_grid,
                                  const std::vector<double>& epsilon_grid = {0.1, 0.01, 0.001});

}  // namespace bochner
