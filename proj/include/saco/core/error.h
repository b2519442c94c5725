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

#ifndef SACO_CORE_ERROR_H_
#define SACO_CORE_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace saco {

enum class ErrorCode {
  kInvalidInput,
  kDegenerateInput,
  kInvalidConfig,
  kFormat,
  kLinearSolve,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Malformed binary or text input. `offset` is the byte offset (binary files)
// or line number (text files) at which parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::uint64_t offset);

  std::uint64_t offset() const { return offset_; }
  // The message without the code prefix and offset suffix.
  const std::string& reason() const { return reason_; }

 private:
  std::uint64_t offset_;
  std::string reason_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace saco

#endif  // SACO_CORE_ERROR_H_
