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

#include "fixpoint/error.hpp"

namespace fixpoint {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kUndecided: return "Undecided";
    case ErrorCode::kInternalDisagreement: return "InternalDisagreement";
    case ErrorCode::kNotAscendingStart: return "NotAscendingStart";
    case ErrorCode::kContractionViolated: return "ContractionViolated";
    case ErrorCode::kMaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::kOrderViolated: return "OrderViolated";
    case ErrorCode::kIncomparablePair: return "IncomparablePair";
    case ErrorCode::kCoincidentPair: return "CoincidentPair";
    case ErrorCode::kRouteDisagreement: return "RouteDisagreement";
    case ErrorCode::kBadStart: return "BadStart";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fixpoint
