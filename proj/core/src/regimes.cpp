// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bimodal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Inequality much_less(std::string name, double lhs, double rhs, double threshold) {
  Inequality q{std::move(name), lhs, rhs, 0.0, false};
  q.margin = lhs == 0.0 ? std::numeric_limits<double>::infinity() : rhs / lhs;
  q.pass = q.margin >= threshold;
  return q;
}

}  // namespace

EffectiveParams effective_params(const PhysicalParams& p) {
  EffectiveParams e;
  e.chi = p.chi();
  e.mu = p.mu();
  e.tau_chi = std::numbers::pi / e.chi;
  e.tau_mu = std::numbers::pi / e.mu;
  return e;
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kDispersive: return "dispersive";
    case Stage::kNonlinear: return "nonlinear";
    case Stage::kNAtom: return "n_atom";
  }
  return "unknown";
}

bool RegimeReport::all_pass() const {
  return std::all_of(inequalities.begin(), inequalities.end(),
                     [](const Inequality& q) { return q.pass; });
}

RegimeReport check_regime(const PhysicalParams& p, double n_bar_a, double n_bar_b, Stage stage,
                          double threshold) {
  if (n_bar_a < 0.0 || n_bar_b < 0.0) throw Error(ErrorCode::kNegativeArg, "mean photon numbers");
  RegimeReport rep;
  rep.stage = stage;
  rep.n_bar_a = n_bar_a;
  rep.n_bar_b = n_bar_b;
  const double omega = std::abs(p.omega_rabi);
  const double delta = std::abs(p.delta);
  const double lambda = std::abs(p.lambda);
  switch (stage) {
    case Stage::kDispersive:
      rep.inequalities.push_back(much_less("Omega << |Delta|", omega, delta, threshold));
      rep.inequalities.push_back(
          much_less("sqrt(n_a) lambda << |Delta|", std::sqrt(n_bar_a) * lambda, delta, threshold));
      rep.inequalities.push_back(
          much_less("sqrt(n_b) lambda << |Delta|", std::sqrt(n_bar_b) * lambda, delta, threshold));
      break;
    case Stage::kNonlinear: {
      const double chi = std::abs(p.chi());
      rep.inequalities.push_back(much_less("n_a chi << Omega", n_bar_a * chi, omega, threshold));
      rep.inequalities.push_back(much_less("n_b chi << Omega", n_bar_b * chi, omega, threshold));
      rep.inequalities.push_back(much_less("n_a sqrt(n_b + 1) chi << Omega",
                                           n_bar_a * std::sqrt(n_bar_b + 1.0) * chi, omega,
                                           threshold));
      rep.inequalities.push_back(much_less("n_b sqrt(n_a + 1) chi << Omega",
                                           n_bar_b * std::sqrt(n_bar_a + 1.0) * chi, omega,
                                           threshold));
      break;
    }
    case Stage::kNAtom: {
      const double n = std::max(p.n_atoms, 1);
      rep.inequalities.push_back(much_less("Omega << |Delta| / N", omega, delta / n, threshold));
      rep.inequalities.push_back(much_less("sqrt(n_a) lambda << |Delta| / N",
                                           std::sqrt(n_bar_a) * lambda, delta / n, threshold));
      rep.inequalities.push_back(much_less("sqrt(n_b) lambda << |Delta| / N",
                                           std::sqrt(n_bar_b) * lambda, delta / n, threshold));
      break;
    }
  }
  return rep;
}

ECSSchedule schedule(int r, int s, double mu, Diagnostics* diag) {
  return ECSSchedule::make(r, s, mu, diag);
}

Setup microwave_preset() {
  const double lambda = kTwoPi * 47e3;
  return {"microwave", lambda, kTwoPi * 235e3, lambda, 30e-3, 0.13, 9.0, 4.0};
}

Setup optical_preset() {
  const double lambda = kTwoPi * 16e6;
  return {"optical", lambda, kTwoPi * 80e6, lambda, 0.66e-6, 0.33e-6, 9.0, 4.0};
}

std::vector<FeasibilityRow> feasibility_table(const std::vector<Setup>& setups,
                                              const std::vector<std::pair<int, int>>& generation) {
  std::vector<FeasibilityRow> rows;
  rows.reserve(setups.size());
  for (const Setup& s : setups) {
    PhysicalParams p;
    p.lambda = s.lambda;
    p.delta = s.delta;
    p.omega_rabi = s.omega_rabi;
    const EffectiveParams e = effective_params(p);
    FeasibilityRow row;
    row.name = s.name;
    row.lambda = s.lambda;
    row.delta = s.delta;
    row.omega_rabi = s.omega_rabi;
    row.chi = e.chi;
    row.mu = e.mu;
    row.tau_chi = e.tau_chi;
    row.tau_mu = e.tau_mu;
    for (const auto& [r, den] : generation) row.t_g.push_back({r, den, schedule(r, den, e.mu).t_g});
    row.atomic_decay = s.atomic_decay;
    row.cavity_decoherence = s.cavity_decoherence;
    row.dispersive_ok = check_regime(p, s.n_bar_a, s.n_bar_b, Stage::kDispersive).all_pass();
    row.nonlinear_ok = check_regime(p, s.n_bar_a, s.n_bar_b, Stage::kNonlinear).all_pass();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bimodal
