// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return bimodal::cli::run_cli(argc, argv, std::cout, std::cerr); }
