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

#include <stdexcept>
#include <string>

namespace bochner {

enum class ErrorKind {
  Structural,     // incompatible spaces, dimension mismatch, malformed partition
  Domain,         // argument outside the operation's domain
  Parse,          // scenario or expression syntax
  Precondition,   // evidence required by an operation is missing
  NotElementary,  // approximating family fails the uniform-integrability probe
  NotConverging,  // scheme does not approach its target in measure
  Resolution,     // horizon or depth exhausted before a criterion was met
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bochner
