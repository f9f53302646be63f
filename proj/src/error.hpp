// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <stdexcept>
#include <string>

namespace logoscope {

// Coarse error classes; these map one-to-one onto the C API status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kNotFound,
  kIo,
  kParse,
  kConflict,
  kInvariant,
  kState,
  kAdapter,
  kNumeric,
  kInternal,
};

// Every failure raised by the core carries a code and a kind. The kind is the
// stable, fine-grained name (e.g. "DuplicateWord", "EmptyLexicon").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), code_(code), kind_(std::move(kind)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCode code_;
  std::string kind_;
};

}  // namespace logoscope
