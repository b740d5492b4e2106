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
#include <map>
#include <vector>

#include "bochner/extension.hpp"
#include "step_data.hpp"

namespace bochner::detail {

/// Indices first, next(first), ... within the first `horizon` members.
std::vector<std::int64_t> chain(const ApproximationScheme& scheme, std::int64_t horizon);

/// Sampled references of a target, memoised by depth.
class ReferenceCache {
 public:
  ReferenceCache(const ApproximableMap& f, const ExtensionOptions& options);

  /// Depth used for scheme index n; -1 when the target is simple.
  int depth_for(std::int64_t n) const;
  const StepData& layout(int depth);
  bool exact() const noexcept { return exact_; }

  double ky_fan(const SimpleMap& s, std::int64_t n);
  double l1(const SimpleMap& s, std::int64_t n);

 private:
  const ApproximableMap& f_;
  const ExtensionOptions& options_;
  bool exact_;
  std::map<int, StepData> cache_;
};

}  // namespace bochner::detail
