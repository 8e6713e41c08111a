// Copyright 2026 The sirw Authors.
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

#include "sirw/error.hpp"

namespace sirw {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kMissingKey: return "missing_key";
    case ErrorCode::kDomain: return "domain_error";
    case ErrorCode::kDegenerateInitial: return "degenerate_initial_condition";
    case ErrorCode::kTerminated: return "terminated_process";
    case ErrorCode::kSolver: return "solver_error";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMissingKey:
    case ErrorCode::kDomain:
    case ErrorCode::kDegenerateInitial:
    case ErrorCode::kUnsupported:
      return true;
    default:
      return false;
  }
}

}  // namespace sirw
