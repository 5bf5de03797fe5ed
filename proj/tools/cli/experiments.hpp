// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bimodal/ecs.hpp"
#include "bimodal/observables.hpp"
#include "bimodal/regimes.hpp"
#include "cli/config.hpp"

namespace bimodal::cli {

// Each run_* function performs the computation behind one command and
// returns plain data. Commands format it; the acceptance gate inspects it.

struct EcsOutcome {
  ECSSchedule schedule;
  int n_max_a = 0;
  int n_max_b = 0;
  WignerGrid grid;
  std::vector<Packet> packets;
  double normalization = 0.0;
  double linear_entropy = 0.0;
  double numeric_fidelity = 0.0;  // vs spectral propagation under the QBS generator
  ConsistencyReport consistency;
};

EcsOutcome run_ecs(const RunConfig& c, Diagnostics* diag = nullptr);

struct Snapshot {
  int k = 0;
  double t = 0.0;
  WignerGrid grid;
  std::vector<Packet> packets;
  double normalization = 0.0;
};

/// Mode-A Wigner snapshots at t = tau_mu / k under the QBS generator.
std::vector<Snapshot> run_wigner(const RunConfig& c, Diagnostics* diag = nullptr);

struct EntropySeries {
  int n_atoms = 0;
  std::vector<double> t;
  std::vector<double> xi;
  std::optional<std::size_t> dip;  // index of the first purification dip
  double norm_drift = 0.0;

  double dip_time() const;
};

/// Mode-A linear entropy under the exact N-atom dynamics for N = 1..n_atoms.
/// All series share one time grid.
std::vector<EntropySeries> run_entropy(const RunConfig& c, Diagnostics* diag = nullptr);

/// Once the running maximum M of xi has reached half of the series maximum,
/// the first region that starts below M/2 and lasts until xi exceeds 3M/4,
/// reduced to its argmin. The hysteresis keeps fast ripples from splitting a
/// dip. nullopt when no such region exists.
std::optional<std::size_t> purification_dip(const std::vector<double>& xi);

struct FidelityCurve {
  std::string name;
  std::vector<double> t;
  std::vector<double> fidelity;
};

struct SweepPoint {
  double ratio = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double omega_rabi = 0.0;
  double mu = 0.0;
  double deficit = 0.0;  // 1 - F at t_final
};

struct ValidateOutcome {
  std::vector<FidelityCurve> curves;
  std::vector<SweepPoint> sweep;
  double sweep_time = 0.0;
  bool sweep_decreasing = false;
  double qbs_aqbs_difference = 0.0;
  std::vector<RegimeReport> regimes;
};

/// Fidelity of each effective stage against the stage above it, the
/// detuning sweep at fixed mu, and the regime reports.
ValidateOutcome run_validate(const RunConfig& c, Diagnostics* diag = nullptr);

/// Terminal deficit between the exact one-atom dynamics and QBS (x) |+> at
/// t_final, for given parameters and field state.
double qbs_deficit(const PhysicalParams& p, cplx alpha, cplx beta, int n_max, double t_final);

struct EvolveOutcome {
  std::vector<double> t;
  std::vector<double> norm;
  std::vector<double> xi_a;
  std::vector<double> n_a;
  std::vector<double> n_b;
  double norm_drift = 0.0;
  double photon_drift = 0.0;  // max |<N>(t) - <N>(0)|
  bool conserves_photons = false;
  bool time_dependent = false;
};

EvolveOutcome run_evolve(const RunConfig& c, Diagnostics* diag = nullptr);

struct FeasibilityOutcome {
  std::vector<FeasibilityRow> rows;
  std::vector<std::vector<RegimeReport>> regimes;  // per row: dispersive, nonlinear
};

FeasibilityOutcome run_feasibility(const RunConfig& c);

/// Uniform grid of `points` samples over [0, t_final].
std::vector<double> time_grid(double t_final, int points);

}  // namespace bimodal::cli
