// Copyright 2026 The Fixpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fixpoint {

// Every failure the library reports. The numeric values are part of the CLI
// exit-code contract (see tools/fixpoint_main.cpp); do not renumber.
enum class ErrorCode : int {
  kParseError = 2,
  kSchemaError = 3,
  kDimensionMismatch = 4,
  kInvalidArgument = 5,  // InvalidTolerance, InvalidP, InvalidAlpha, ...
  kNotNormal = 6,
  kUndecided = 7,
  kInternalDisagreement = 8,
  kNotAscendingStart = 9,
  kContractionViolated = 10,
  kMaxIterExceeded = 11,
  kOrderViolated = 12,
  kIncomparablePair = 13,
  kCoincidentPair = 14,
  kRouteDisagreement = 15,
  kBadStart = 16,
  kNumericalFailure = 17,
  kIoError = 18,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  // Offending step or element, when the failure is localized.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace fixpoint
