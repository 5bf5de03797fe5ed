// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/evolve.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sparse_util.hpp"

namespace bimodal {

double max_time_step(double fast_frequency) {
  if (!(fast_frequency > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fast frequency must be positive");
  }
  return 2.0 * std::numbers::pi / fast_frequency / 50.0;
}

namespace {

using Rhs = std::function<void(double t, const Vector& x, Vector& y)>;

struct StepPlan {
  long steps = 0;
  double dt = 0.0;
};

StepPlan plan_steps(double fast_frequency, double t_final, double requested, bool allow_large,
                    Diagnostics* diag) {
  if (t_final < 0.0) throw Error(ErrorCode::kInvalidArgument, "t_final must be >= 0");
  const double limit = max_time_step(fast_frequency);
  double dt = requested > 0.0 ? requested : limit;
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt " << dt << " exceeds the limit " << limit;
    if (!allow_large) throw Error(ErrorCode::kStepTooLarge, msg.str());
    warn(diag, ErrorCode::kStepTooLarge, msg.str());
  }
  if (t_final == 0.0) return {0, dt};
  const long steps = static_cast<long>(std::ceil(t_final / dt * (1.0 - 1e-12)));
  return {std::max(steps, 1L), t_final / static_cast<double>(std::max(steps, 1L))};
}

Trajectory integrate(const Rhs& h_apply, const HilbertSpace& space, const StateVector& psi0,
                     const StepPlan& plan, const TimeDepOptions& options) {
  if (options.stride < 1) throw Error(ErrorCode::kInvalidArgument, "stride must be >= 1");
  Trajectory traj;
  Vector psi = psi0.amplitudes;
  const double norm0 = psi.norm();
  const cplx mi(0.0, -1.0);
  const Index n = psi.size();
  Vector k1(n), k2(n), k3(n), k4(n), tmp(n), hx(n);

  auto sample = [&](double t) {
    const double drift = std::abs(psi.norm() - norm0);
    traj.norm_drift = std::max(traj.norm_drift, drift);
    traj.times.push_back(t);
    if (options.store_states || options.observer) {
      StateVector s{space, psi};
      if (options.observer) options.observer(t, s);
      if (options.store_states) traj.states.push_back(std::move(s));
    }
  };

  sample(0.0);
  const double dt = plan.dt;
  for (long step = 0; step < plan.steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    h_apply(t, psi, hx);
    k1 = mi * hx;
    tmp = psi + (0.5 * dt) * k1;
    h_apply(t + 0.5 * dt, tmp, hx);
    k2 = mi * hx;
    tmp = psi + (0.5 * dt) * k2;
    h_apply(t + 0.5 * dt, tmp, hx);
    k3 = mi * hx;
    tmp = psi + dt * k3;
    h_apply(t + dt, tmp, hx);
    k4 = mi * hx;
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const bool last = step + 1 == plan.steps;
    if ((step + 1) % options.stride == 0 || last) {
      sample(last ? static_cast<double>(plan.steps) * dt : t + dt);
    } else {
      traj.norm_drift = std::max(traj.norm_drift, std::abs(psi.norm() - norm0));
    }
  }
  if (traj.norm_drift > options.drift_tolerance) {
    traj.failed = true;
    std::ostringstream msg;
    msg << "norm drift " << traj.norm_drift << " above " << options.drift_tolerance;
    throw Error(ErrorCode::kNormDrift, msg.str());
  }
  return traj;
}

}  // namespace

Trajectory propagate_timedep(const HarmonicHamiltonian& h, const StateVector& psi0, double t_final,
                             const TimeDepOptions& options, Diagnostics* diag) {
  detail::require_same_space(h.space(), psi0.space, "propagate_timedep");
  const StepPlan plan =
      plan_steps(h.fast_frequency(), t_final, options.dt, options.allow_large_step, diag);
  return integrate([&h](double t, const Vector& x, Vector& y) { h.apply(t, x, y); }, h.space(),
                   psi0, plan, options);
}

Trajectory propagate_timedep(const std::function<Operator(double)>& h_of_t, double fast_frequency,
                             const StateVector& psi0, double t_final,
                             const TimeDepOptions& options, Diagnostics* diag) {
  const StepPlan plan =
      plan_steps(fast_frequency, t_final, options.dt, options.allow_large_step, diag);
  const HilbertSpace space = psi0.space;
  return integrate(
      [&h_of_t, &space](double t, const Vector& x, Vector& y) {
        const Operator h = h_of_t(t);
        detail::require_same_space(h.space, space, "propagate_timedep");
        y.noalias() = h.matrix * x;
      },
      space, psi0, plan, options);
}

StateVector evolve_to(const HarmonicHamiltonian& h, const StateVector& psi0, double t_final,
                      double dt, Diagnostics* diag) {
  TimeDepOptions opt;
  opt.dt = dt;
  opt.store_states = false;
  opt.stride = 1 << 30;
  StateVector out = psi0;
  opt.observer = [&out](double, const StateVector& s) { out = s; };
  propagate_timedep(h, psi0, t_final, opt, diag);
  return out;
}

double fidelity_vs_effective(const HarmonicHamiltonian& exact, const Operator& effective,
                             const StateVector& psi0, double t, const Operator* frame_generator,
                             double dt) {
  detail::require_same_space(exact.space(), effective.space, "fidelity_vs_effective");
  detail::require_same_space(exact.space(), psi0.space, "fidelity_vs_effective");
  if (t == 0.0) return 1.0;
  StateVector psi_exact = evolve_to(exact, psi0, t, dt);
  if (frame_generator != nullptr) {
    psi_exact = SpectralPropagator(*frame_generator).apply(psi_exact, -t);
  }
  const StateVector psi_eff = propagate_static(effective, psi0, t);
  return overlap_fidelity(psi_exact, psi_eff);
}

}  // namespace bimodal
