// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "bimodal/ecs.hpp"
#include "bimodal/hamiltonian.hpp"

namespace bimodal {

/// chi = lambda^2 / delta, mu = chi^2 / (2 omega), tau = pi / rate.
/// Throws kZeroDetuning for delta == 0 and kZeroDrive for omega <= 0.
EffectiveParams effective_params(const PhysicalParams& p);

enum class Stage { kDispersive, kNonlinear, kNAtom };

std::string_view to_string(Stage stage);

/// "lhs << rhs" with margin = rhs / lhs; passes when margin >= threshold.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct RegimeReport {
  Stage stage = Stage::kDispersive;
  std::vector<Inequality> inequalities;
  double n_bar_a = 0.0;
  double n_bar_b = 0.0;

  bool all_pass() const;
};

RegimeReport check_regime(const PhysicalParams& p, double n_bar_a, double n_bar_b, Stage stage,
                          double threshold = 10.0);

ECSSchedule schedule(int r, int s, double mu, Diagnostics* diag = nullptr);

struct Setup {
  std::string name;
  double lambda = 0.0;
  double delta = 0.0;
  double omega_rabi = 0.0;
  double atomic_decay = 0.0;        // seconds
  double cavity_decoherence = 0.0;  // seconds
  double n_bar_a = 9.0;
  double n_bar_b = 4.0;
};

/// Rydberg atoms in a superconducting microwave cavity.
Setup microwave_preset();

/// Trapped rubidium atoms in an optical cavity.
Setup optical_preset();

struct GenerationTime {
  int r = 0;
  int s = 0;
  double t_g = 0.0;
};

struct FeasibilityRow {
  std::string name;
  double lambda = 0.0;
  double delta = 0.0;
  double omega_rabi = 0.0;
  double chi = 0.0;
  double mu = 0.0;
  double tau_chi = 0.0;
  double tau_mu = 0.0;
  std::vector<GenerationTime> t_g;
  double atomic_decay = 0.0;
  double cavity_decoherence = 0.0;
  bool dispersive_ok = false;
  bool nonlinear_ok = false;
};

std::vector<FeasibilityRow> feasibility_table(
    const std::vector<Setup>& setups,
    const std::vector<std::pair<int, int>>& generation = {{2, 3}, {2, 5}, {2, 7}, {2, 11}});

}  // namespace bimodal
