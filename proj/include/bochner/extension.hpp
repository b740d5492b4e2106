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

#include "bochner/error.hpp"
#include "bochner/scheme.hpp"
#include "bochner/uniform_integrability.hpp"

namespace bochner {

struct ExtensionOptions {
  double tol = 1e-6;
  std::int64_t horizon = 64;
  /// Ky Fan threshold for the in-measure check; sqrt(tol) when unset.
  std::optional<double> in_measure_tol;
  std::vector<double> delta_grid = geometric_delta_grid(20);
  std::vector<double> epsilon_grid = {0.1, 0.01, 0.001};
  /// Reference depth for schemes whose indices are not dyadic levels.
  int reference_depth = 20;
  /// Deepest reference used for dyadic schemes.
  int max_reference_depth = 20;
  bool require_in_measure = true;

  double in_measure_threshold() const;
};

struct ExtensionResult {
  BanachElement value;
  double cauchy_bound = 0.0;
  std::int64_t n_used = 0;
  /// Indices n_k visited and l1(s_{n_k}, s_{n_{k+1}}).
  std::vector<std::int64_t> cauchy_indices;
  std::vector<double> cauchy_trace;
  /// Ky Fan distance of s_n to a reference built from the target.
  std::vector<std::int64_t> in_measure_indices;
  std::vector<double> in_measure_trace;
  std::vector<int> reference_depths;
  double in_measure_threshold = 0.0;
  bool in_measure_converged = false;
  UIModulusReport ui_report;
};

/// Failure of the extension, carrying whatever was computed before it.
class ExtensionError : public Error {
 public:
  ExtensionError(ErrorKind kind, const std::string& message, ExtensionResult partial)
      : Error(kind, message), partial_(std::move(partial)) {}
  const ExtensionResult& partial() const noexcept { return partial_; }

 private:
  ExtensionResult partial_;
};

/// Limit of int s_n along the scheme, with a tail bound on its error.
ExtensionResult extend_integral(const ApproximableMap& f, const ExtensionOptions& options = {});

/// Reference map the scheme element with index n is compared against.
struct Reference {
  SimpleMap map;
  int depth;  // -1 when the target is itself simple
  bool exact;
};
Reference reference_for(const ApproximableMap& f, std::int64_t n, const ExtensionOptions& options);

enum class Agreement { Agree, Disagree, Inapplicable };

struct WellDefinedness {
  Agreement verdict = Agreement::Inapplicable;
  double discrepancy = 0.0;
  double allowance = 0.0;
  std::optional<ExtensionResult> a;
  std::optional<ExtensionResult> b;
  /// l1(s_n^a, s_n^b) along the first scheme's indices.
  std::vector<std::int64_t> pair_indices;
  std::vector<double> pair_trace;
  bool in_measure_mismatch = false;
  std::string reason;
};

WellDefinedness well_definedness_audit(const Evaluator& f, const ApproximationScheme& scheme_a,
                                       const ApproximationScheme& scheme_b,
                                       const ExtensionOptions& options = {});

}  // namespace bochner
