// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/output.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "cli/literals.hpp"

namespace bimodal::cli {

nlohmann::json to_json(const Assertion& a) {
  nlohmann::json j{{"name", a.name}, {"pass", a.pass}, {"value", a.value}, {"limit", a.limit}};
  if (!a.detail.empty()) j["detail"] = a.detail;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

void CsvTable::meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }

void CsvTable::column(std::string name, std::string unit, const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add(unit.empty() ? std::move(name) : name + " [" + unit + "]", std::move(cells));
}

void CsvTable::labels(std::string name, std::vector<std::string> values) {
  for (const std::string& v : values) {
    if (v.find_first_of(",\"\n") != std::string::npos) {
      throw std::invalid_argument("CSV label '" + v + "' needs quoting");
    }
  }
  add(std::move(name), std::move(values));
}

void CsvTable::add(std::string header, std::vector<std::string> cells) {
  if (!columns_.empty() && cells.size() != columns_.front().size()) {
    throw std::invalid_argument("CSV column '" + header + "' has a different length");
  }
  headers_.push_back(std::move(header));
  columns_.push_back(std::move(cells));
}

std::string CsvTable::render() const {
  std::ostringstream out;
  for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < headers_.size(); ++c) out << (c ? "," : "") << headers_[c];
  out << '\n';
  const std::size_t rows = columns_.empty() ? 0 : columns_.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c][r];
    out << '\n';
  }
  return out.str();
}

CsvTable wigner_table(const WignerGrid& grid) {
  std::vector<double> q;
  std::vector<double> p;
  std::vector<double> w;
  const std::size_t n = grid.q.size() * grid.p.size();
  q.reserve(n);
  p.reserve(n);
  w.reserve(n);
  for (std::size_t i = 0; i < grid.q.size(); ++i) {
    for (std::size_t k = 0; k < grid.p.size(); ++k) {
      q.push_back(grid.q[i]);
      p.push_back(grid.p[k]);
      w.push_back(grid.w(static_cast<Index>(i), static_cast<Index>(k)));
    }
  }
  CsvTable t;
  t.meta("cell_area", format_double(grid.cell_area));
  t.column("q", "1", q);
  t.column("p", "1", p);
  t.column("W", "1", w);
  return t;
}

nlohmann::json warnings_json(const Diagnostics& diag) {
  nlohmann::json out = nlohmann::json::array();
  for (const Warning& w : diag.warnings()) out.push_back({{"code", to_string(w.code)}, {"message", w.message}});
  return out;
}

}  // namespace bimodal::cli
