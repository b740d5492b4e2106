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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bochner/extension.hpp"
#include "bochner/scheme.hpp"
#include "bochner/uniform_integrability.hpp"

namespace bochner {

/// |int f| <= int |f|: slack is int|f| - |int f|, allowance the sum of the
/// two Cauchy bounds.
struct NormDomination {
  double slack;
  double allowance;
  ExtensionResult integral;
  ExtensionResult norm_integral;
  bool holds() const noexcept { return slack >= -allowance; }
};

NormDomination norm_domination_check(const ApproximableMap& f, const ExtensionOptions& options = {});

struct DensityResult {
  SimpleMap map;
  std::int64_t index;
  /// l1 distance to the reference, and the bound claimed for the target.
  double measured;
  double certified;
  bool exact_reference;
  int reference_depth;
};

/// First scheme element whose certified l1 distance to f is below epsilon.
DensityResult density_approximation(const ApproximableMap& f, double epsilon,
                                    const ExtensionOptions& options = {});

enum class VitaliDirection { Forward, Backward };
enum class VitaliConclusion { Consistent, Violation, Inapplicable };

struct VitaliWitness {
  std::int64_t index;
  double lhs;
  double rhs;
  std::string what;
};

struct VitaliVerdict {
  VitaliDirection direction;
  UIModulusReport ui;
  std::vector<std::int64_t> indices;
  /// Ky Fan distance and int|f - f_n| per index, and int|f_n|.
  std::vector<double> in_measure_trace;
  std::vector<double> l1_trace;
  std::vector<double> norm_trace;
  /// int |f_n - s_n| for the simple approximations s_n, each <= 1/n.
  std::vector<double> approximation_gaps;
  VitaliConclusion conclusion = VitaliConclusion::Inapplicable;
  std::optional<VitaliWitness> witness;
  std::string reason;
};

VitaliVerdict vitali_audit(const ApproximableMap& f, const ApproximationScheme& sequence,
                           VitaliDirection direction, const ExtensionOptions& options = {});

struct RieszFischerResult {
  ApproximableMap limit;
  SimpleMap limit_map;
  ExtensionResult extension;
  /// Fast subsequence: indices with l1 tail below 2^-k.
  std::vector<std::int64_t> picks;
  std::vector<double> tails;
  VitaliVerdict audit;
};

RieszFischerResult riesz_fischer_construct(const ApproximationScheme& sequence,
                                           const ExtensionOptions& options = {});

/// int f - int g for real scalar maps with f >= g on the scheme cells.
struct Monotonicity {
  double slack;
  double allowance;
  ExtensionResult f;
  ExtensionResult g;
  bool holds() const noexcept { return slack >= -allowance; }
};

Monotonicity positivity_monotonicity_check(const ApproximableMap& f, const ApproximableMap& g,
                                           const ExtensionOptions& options = {});

}  // namespace bochner
