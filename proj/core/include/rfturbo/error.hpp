// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rfturbo {

enum class ErrorKind {
  kInvalidArgument,
  kNonSquare,
  kNonSymmetric,
  kDimensionMismatch,
  kSingularGram,
  kNotAFrame,
  kBadBlockSize,
  kUnsupportedM,
  kOddSize,
  kSizeMismatch,
  kBadRange,
  kBadCount,
  kEmptySurvivorSet,
  kNotReconstructible,
  kBoundaryCase,
  kParse,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; kind() is stable,
// what() is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace rfturbo
