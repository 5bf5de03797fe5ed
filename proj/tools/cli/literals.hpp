// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bimodal/hilbert.hpp"

namespace bimodal::cli {

/// Bad user input. Mapped to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a frequency literal into rad/s.
///
/// Grammar: [2pi*]NUMBER[UNIT] with UNIT in {Hz, kHz, MHz, GHz, rad/s}.
///   "2pi*47kHz" -> 2 pi * 47e3 (explicitly angular)
///   "47kHz"     -> 2 pi * 47e3, or 47e3 when `angular` is set
///   "12.5"      -> 12.5 (a bare number is already a rate)
///   "3rad/s"    -> 3
double parse_frequency(std::string_view text, bool angular = false);

/// Parses "1.5", "-2i", "i", "1+2i", "3e-1-0.5j" or "(q,p)".
cplx parse_complex(std::string_view text);

/// "auto" yields nullopt; otherwise a non-negative integer.
std::optional<int> parse_n_max(std::string_view text);

/// Accepts true/false, 1/0, yes/no, on/off.
bool parse_bool(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace bimodal::cli
