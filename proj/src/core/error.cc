// Copyright 2026 The Authors.
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

#include "saco/core/error.h"

namespace saco {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kDegenerateInput:
      return "degenerate-input";
    case ErrorCode::kInvalidConfig:
      return "invalid-config";
    case ErrorCode::kFormat:
      return "format-error";
    case ErrorCode::kLinearSolve:
      return "linear-solve-error";
    case ErrorCode::kIo:
      return "io-error";
  }
  return "unknown-error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(message) {}

FormatError::FormatError(const std::string& message, std::uint64_t offset)
    : Error(ErrorCode::kFormat,
            message + " (at offset " + std::to_string(offset) + ")"),
      offset_(offset),
      reason_(message) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace saco
