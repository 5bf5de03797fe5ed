// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/literals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace bimodal::cli {

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool starts_with_ci(const std::string& s, std::string_view prefix) {
  return lower(s.substr(0, prefix.size())) == prefix;
}

// Parses the whole of `text` as a double.
std::optional<double> to_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

double must_double(std::string_view text, std::string_view what) {
  const auto v = to_double(text);
  if (!v) throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  return *v;
}

// Coefficient of an imaginary term: "", "+", "-" stand for 1, 1, -1.
double imaginary_coefficient(std::string_view text, std::string_view whole) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return must_double(text, "complex number " + std::string(whole));
}

}  // namespace

double parse_frequency(std::string_view text, bool angular) {
  std::string s = strip(text);
  if (s.empty()) throw ConfigError("empty frequency literal");
  bool two_pi = false;
  for (std::string_view prefix : {"2pi*", "2*pi*", "2π*"}) {
    if (starts_with_ci(s, prefix)) {
      two_pi = true;
      s = s.substr(prefix.size());
      break;
    }
  }
  struct Unit {
    std::string_view suffix;
    double scale;
    bool hz;
  };
  static constexpr std::array<Unit, 5> kUnits{{{"rad/s", 1.0, false},
                                               {"ghz", 1e9, true},
                                               {"mhz", 1e6, true},
                                               {"khz", 1e3, true},
                                               {"hz", 1.0, true}}};
  const std::string ls = lower(s);
  double scale = 1.0;
  bool hz = false;
  bool rad = false;
  for (const Unit& u : kUnits) {
    if (ls.size() > u.suffix.size() && ls.ends_with(u.suffix)) {
      s = s.substr(0, s.size() - u.suffix.size());
      scale = u.scale;
      hz = u.hz;
      rad = !u.hz;
      break;
    }
  }
  if (two_pi && rad) throw ConfigError("'2pi*' cannot be combined with rad/s in '" + std::string(text) + "'");
  const double value = must_double(s, "frequency") * scale;
  if (two_pi) return 2.0 * std::numbers::pi * value;
  if (hz && !angular) return 2.0 * std::numbers::pi * value;
  return value;
}

cplx parse_complex(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw ConfigError("empty complex number");
  if (s.front() == '(') {
    const auto comma = s.find(',');
    if (s.back() != ')' || comma == std::string::npos) {
      throw ConfigError("complex pair must look like (q,p): '" + std::string(text) + "'");
    }
    return {must_double(s.substr(1, comma - 1), "real part"),
            must_double(s.substr(comma + 1, s.size() - comma - 2), "imaginary part")};
  }
  const char last = static_cast<char>(std::tolower(static_cast<unsigned char>(s.back())));
  if (last != 'i' && last != 'j') return {must_double(s, "complex number"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // The split is the last sign that is not the sign of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, imaginary_coefficient(body, text)};
  return {must_double(body.substr(0, split), "real part"),
          imaginary_coefficient(body.substr(split), text)};
}

std::optional<int> parse_n_max(std::string_view text) {
  const std::string s = lower(strip(text));
  if (s == "auto") return std::nullopt;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw ConfigError("--n-max expects a non-negative integer or 'auto', got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text) {
  const std::string s = lower(strip(text));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("expected a boolean, got '" + std::string(text) + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace bimodal::cli
