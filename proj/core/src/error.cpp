// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/error.hpp"

#include <algorithm>

namespace bimodal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeArg: return "NegativeArg";
    case ErrorCode::kDimensionCap: return "DimensionCap";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNoAtoms: return "NoAtoms";
    case ErrorCode::kAtomCountMismatch: return "AtomCountMismatch";
    case ErrorCode::kTruncation: return "TruncationError";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kNormDrift: return "NormDrift";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kZeroDetuning: return "ZeroDetuning";
    case ErrorCode::kZeroDrive: return "ZeroDrive";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void Diagnostics::warn(ErrorCode code, std::string message) {
  warnings_.push_back({code, std::move(message)});
}

bool Diagnostics::has(ErrorCode code) const noexcept {
  return std::any_of(warnings_.begin(), warnings_.end(),
                     [code](const Warning& w) { return w.code == code; });
}

}  // namespace bimodal
