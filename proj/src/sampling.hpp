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

#include "bochner/scheme.hpp"
#include "step_data.hpp"

namespace bochner::detail {

/// Raw (non-canonical) layout of an evaluator sampled on 2^depth dyadic
/// cells, or on every atom. Exact evaluators yield their own layout.
StepData sample_layout(const Evaluator& f, int depth, SamplingRule rule);

}  // namespace bochner::detail
