// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bimodal/hamiltonian.hpp"
#include "bimodal/observables.hpp"
#include "cli/literals.hpp"

namespace bimodal::cli {

enum class Command { kEcs, kEvolve, kEntropy, kWigner, kFeasibility, kValidate };

std::string_view to_string(Command c);
Command parse_command(std::string_view name);

/// Models accepted by the evolve command.
enum class Model {
  kExact,            // one atom, time dependent
  kExactN,           // N atoms, time dependent
  kDispersive,       // one atom
  kDispersiveN,      // N atoms
  kNonlinear,        // one atom
  kBeamSplitter,     // field only
  kQbs,              // field only
  kAqbs,             // field only, N-fold
  kManyAtomEffective
};

std::string_view to_string(Model m);
Model parse_model(std::string_view name);

/// Everything a command needs. Frequencies are angular (rad per time unit);
/// times use the reciprocal unit. Optional fields fall back to
/// command-specific defaults.
struct RunConfig {
  Command command = Command::kEcs;

  double lambda = 1.0;
  double delta = 12.5;
  double omega_rabi = 1.0;
  int n_atoms = 1;
  std::optional<double> epsilon;

  cplx alpha{3.0, 0.0};
  cplx beta{2.0, 0.0};
  AtomState atom_prep = AtomState::kPlus;

  int r = 2;
  int s = 3;

  std::optional<double> t_final;
  int time_points = 401;
  std::optional<double> dt;

  std::optional<int> n_max_a;  // nullopt means auto
  std::optional<int> n_max_b;

  GridSpec grid;
  double packet_threshold = 0.1;

  Model model = Model::kExact;
  std::vector<int> snapshots{107, 61, 37, 17, 11, 7, 5, 3};
  std::vector<double> sweep{10.0, 20.0, 40.0};

  bool angular = false;
  int threads = 1;
  int seed = 0;  // reserved

  std::filesystem::path out_dir = ".";

  PhysicalParams params() const;
  bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);

/// Reads a config object. Frequency fields accept numbers (rad per time unit)
/// or literals such as "2pi*47kHz"; complex fields accept [re, im] or a
/// string. Unknown keys are rejected. Throws ConfigError.
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_config(const std::filesystem::path& path);

/// Rejects inconsistent settings before any computation. Throws ConfigError.
void validate(const RunConfig& c);

/// Cutoff used when a mode is set to auto: smallest n with Poisson tail
/// below 1e-8 for `mean`, plus 10 levels.
int auto_cutoff(double mean);

/// Resolves the per-mode cutoffs against a mean photon bound.
std::pair<int, int> resolve_cutoffs(const RunConfig& c, double mean_a, double mean_b);

std::string to_string(AtomState s);
AtomState parse_atom_state(std::string_view name);

}  // namespace bimodal::cli
