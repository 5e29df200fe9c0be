// Copyright 2026 The sofic-pressure Authors.
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

#ifndef SOFIC_ERROR_HPP_
#define SOFIC_ERROR_HPP_

#include <cstdio>
#include <stdexcept>
#include <string>

namespace sofic {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kTooLarge,
  kNoConvergence,
};

// The single exception type thrown by the core. The C API maps `code()` onto
// its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Compact rendering of a double for error messages.
inline std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

[[noreturn]] inline void ThrowInvalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace sofic

#endif  // SOFIC_ERROR_HPP_
