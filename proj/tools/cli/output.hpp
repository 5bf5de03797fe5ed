// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bimodal/error.hpp"
#include "bimodal/observables.hpp"

namespace bimodal::cli {

/// One internal check of a command run.
struct Assertion {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

nlohmann::json to_json(const Assertion& a);

/// Writes `contents` to a sibling temp file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Column-oriented table rendered as CSV: '#'-prefixed metadata lines, a
/// header of "name [unit]" cells, then rows in shortest round-trip format.
class CsvTable {
 public:
  void meta(std::string key, std::string value);
  void column(std::string name, std::string unit, const std::vector<double>& values);
  void labels(std::string name, std::vector<std::string> values);
  std::string render() const;

 private:
  void add(std::string header, std::vector<std::string> cells);

  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> columns_;
};

/// Long-format q, p, W table of a grid.
CsvTable wigner_table(const WignerGrid& grid);

nlohmann::json warnings_json(const Diagnostics& diag);

}  // namespace bimodal::cli
