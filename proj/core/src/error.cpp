// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/error.hpp"

namespace rfturbo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNonSquare: return "NonSquare";
    case ErrorKind::kNonSymmetric: return "NonSymmetric";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kSingularGram: return "SingularGram";
    case ErrorKind::kNotAFrame: return "NotAFrame";
    case ErrorKind::kBadBlockSize: return "BadBlockSize";
    case ErrorKind::kUnsupportedM: return "UnsupportedM";
    case ErrorKind::kOddSize: return "OddSize";
    case ErrorKind::kSizeMismatch: return "SizeMismatch";
    case ErrorKind::kBadRange: return "BadRange";
    case ErrorKind::kBadCount: return "BadCount";
    case ErrorKind::kEmptySurvivorSet: return "EmptySurvivorSet";
    case ErrorKind::kNotReconstructible: return "NotReconstructible";
    case ErrorKind::kBoundaryCase: return "BoundaryCase";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace rfturbo
