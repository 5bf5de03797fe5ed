// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bimodal {

enum class ErrorCode {
  kNegativeArg,
  kDimensionCap,
  kIndexOutOfRange,
  kNoAtoms,
  kAtomCountMismatch,
  kTruncation,
  kNotHermitian,
  kSpaceMismatch,
  kStepTooLarge,
  kNormDrift,
  kNotCoprime,
  kZeroDetuning,
  kZeroDrive,
  kEmptyGrid,
  kGridTooCoarse,
  kNotPrime,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Warning {
  ErrorCode code;
  std::string message;
};

// Collects non-fatal conditions. Functions that can warn take an optional
// pointer; passing nullptr discards warnings.
class Diagnostics {
 public:
  void warn(ErrorCode code, std::string message);
  const std::vector<Warning>& warnings() const noexcept { return warnings_; }
  bool has(ErrorCode code) const noexcept;
  bool empty() const noexcept { return warnings_.empty(); }
  void clear() noexcept { warnings_.clear(); }

 private:
  std::vector<Warning> warnings_;
};

inline void warn(Diagnostics* diag, ErrorCode code, std::string message) {
  if (diag != nullptr) diag->warn(code, std::move(message));
}

}  // namespace bimodal
