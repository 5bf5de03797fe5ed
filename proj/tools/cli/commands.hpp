// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace bimodal::cli {

/// Exit codes of the `bimodal` executable.
enum ExitCode : int {
  kExitPass = 0,
  kExitAssertion = 1,
  kExitConfig = 2,  // bad flags or config, or a library error raised by them
  kExitInternal = 3,
};

struct CommandReport {
  Command command = Command::kEcs;
  nlohmann::json results;
  std::vector<Assertion> assertions;
  Diagnostics diagnostics;
  std::vector<std::filesystem::path> files;  // every file written, report last

  bool passed() const;
  nlohmann::json to_json(const RunConfig& c) const;
};

/// Runs one command and writes its CSV files plus `<command>.json` into
/// c.out_dir. The config must already be validated.
CommandReport execute(const RunConfig& c);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bimodal::cli
