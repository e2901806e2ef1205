// Copyright 2026 The handleopt Authors
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

#include "handleopt/error.hpp"

namespace handleopt {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kParse: return "E_PARSE";
    case ErrorCode::kSchema: return "E_SCHEMA";
    case ErrorCode::kValidation: return "E_VALIDATION";
    case ErrorCode::kDegenerateVelocity: return "E_DEGENERATE_VELOCITY";
    case ErrorCode::kIndexOutOfRange: return "E_INDEX_OUT_OF_RANGE";
    case ErrorCode::kSingularChain: return "E_SINGULAR_CHAIN";
    case ErrorCode::kIllConditioned: return "E_ILL_CONDITIONED";
    case ErrorCode::kZeroTorque: return "E_ZERO_TORQUE";
    case ErrorCode::kNoFeasiblePoint: return "E_NO_FEASIBLE_POINT";
  }
  return "E_UNKNOWN";
}

}  // namespace handleopt
