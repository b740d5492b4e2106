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

#include "bochner/error.hpp"

namespace bochner {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NotElementary: return "not_elementary";
    case ErrorKind::NotConverging: return "not_converging";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace bochner
