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

#ifndef SIRW_ERROR_HPP_
#define SIRW_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sirw {

// Error categories. Values are stable: they are mirrored by sirw_status in
// the C API.
enum class ErrorCode {
  kInvalidArgument = 1,
  kMissingKey = 2,
  kDomain = 3,
  kDegenerateInitial = 4,
  kTerminated = 5,
  kSolver = 6,
  kUnsupported = 7,
  kIo = 8,
  kInternal = 9,
};

const char* error_code_name(ErrorCode code) noexcept;

// True for errors caused by bad input (as opposed to failures at run time).
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string key = {})
      : std::runtime_error(message), code_(code), key_(std::move(key)) {}

  ErrorCode code() const noexcept { return code_; }
  // Offending configuration key or parameter name, empty when not applicable.
  const std::string& key() const noexcept { return key_; }

 private:
  ErrorCode code_;
  std::string key_;
};

}  // namespace sirw

#endif  // SIRW_ERROR_HPP_
