// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "bimodal/evolve.hpp"
#include "bimodal/hamiltonian.hpp"

namespace bimodal::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double field_mean(const RunConfig& c) { return std::norm(c.alpha) + std::norm(c.beta); }

HilbertSpace space_for(const RunConfig& c, int n_atoms) {
  const double mean = field_mean(c);
  const auto [na, nb] = resolve_cutoffs(c, mean, mean);
  return make_space(na, nb, n_atoms);
}

AtomicProduct atoms_for(const RunConfig& c, int n_atoms) {
  return n_atoms > 0 ? uniform_atoms(n_atoms, c.atom_prep) : AtomicProduct{};
}

double mean_number(const DensityMatrix& rho) {
  double n = 0.0;
  for (Index k = 0; k < rho.matrix.rows(); ++k) n += static_cast<double>(k) * rho.matrix(k, k).real();
  return n;
}

using SampleFn = std::function<void(std::size_t index, const StateVector& psi)>;

// RK4 run that samples exactly on time_grid(t_final, points). Returns the
// norm drift. Without an explicit dt the step is a quarter of the largest
// allowed one, which keeps the drift of long runs under 1e-6.
double sampled_rk4(const HarmonicHamiltonian& h, const StateVector& psi0, double t_final, int points,
                   std::optional<double> dt, const SampleFn& on_sample, Diagnostics* diag) {
  const double limit = dt.value_or(max_time_step(h.fast_frequency()) / 4.0);
  const double interval = t_final / (points - 1);
  const long per_sample = std::max(1L, static_cast<long>(std::ceil(interval / limit * (1.0 - 1e-12))));
  TimeDepOptions opt;
  opt.dt = interval / static_cast<double>(per_sample);
  opt.stride = static_cast<int>(per_sample);
  opt.store_states = false;
  std::size_t index = 0;
  opt.observer = [&](double, const StateVector& psi) { on_sample(index++, psi); };
  const Trajectory tr = propagate_timedep(h, psi0, t_final, opt, diag);
  return tr.norm_drift;
}

std::vector<StateVector> sampled_rk4_states(const HarmonicHamiltonian& h, const StateVector& psi0,
                                            const std::vector<double>& times, std::optional<double> dt,
                                            Diagnostics* diag) {
  std::vector<StateVector> out;
  out.reserve(times.size());
  sampled_rk4(h, psi0, times.back(), static_cast<int>(times.size()), dt,
              [&out](std::size_t, const StateVector& psi) { out.push_back(psi); }, diag);
  return out;
}

std::vector<StateVector> static_states(const Operator& h, const StateVector& psi0, const std::vector<double>& times) {
  const SpectralPropagator prop(h);
  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(prop.apply(psi0, t));
  return out;
}

// Maps lab-frame states into the frame exp(-i G t).
std::vector<StateVector> into_frame(const Operator& g, const std::vector<StateVector>& states,
                                    const std::vector<double>& times) {
  const SpectralPropagator prop(g);
  std::vector<StateVector> out;
  out.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) out.push_back(prop.apply(states[k], -times[k]));
  return out;
}

FidelityCurve compare(std::string name, const std::vector<double>& times, const std::vector<StateVector>& x,
                      const std::vector<StateVector>& y) {
  FidelityCurve c{std::move(name), times, {}};
  c.fidelity.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) c.fidelity.push_back(overlap_fidelity(x[k], y[k]));
  return c;
}

double default_duration(const PhysicalParams& p) { return (kPi / p.mu()) / 5.0; }

}  // namespace

std::vector<double> time_grid(double t_final, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) t[k] = t_final * k / (points - 1);
  t.back() = t_final;
  return t;
}

EcsOutcome run_ecs(const RunConfig& c, Diagnostics* diag) {
  const PhysicalParams p = c.params();
  EcsOutcome out;
  out.schedule = ECSSchedule::make(c.r, c.s, p.mu(), diag);
  const HilbertSpace space = space_for(c, 0);
  out.n_max_a = space.n_max_a;
  out.n_max_b = space.n_max_b;
  const StateVector psi = ecs_state(space, c.alpha, c.beta, out.schedule, diag);
  const DensityMatrix rho = reduced_rho_a(psi);
  out.linear_entropy = linear_entropy(rho);
  out.grid = wigner(rho, c.grid, c.threads, diag);
  out.normalization = out.grid.normalization();
  out.packets = detect_packets(out.grid, c.packet_threshold);
  const StateVector numeric = propagate_static(qbs(space, out.schedule.mu, true),
                                               coherent_state(space, c.alpha, c.beta, {}, diag), out.schedule.t_g);
  out.numeric_fidelity = overlap_fidelity(psi, numeric);
  out.consistency = consistency_report(space, c.alpha, c.beta, out.schedule);
  return out;
}

std::vector<Snapshot> run_wigner(const RunConfig& c, Diagnostics* diag) {
  const double mu = c.params().mu();
  const HilbertSpace space = space_for(c, 0);
  const SpectralPropagator prop(qbs(space, mu, true));
  const StateVector psi0 = coherent_state(space, c.alpha, c.beta, {}, diag);
  std::vector<Snapshot> out;
  for (int k : c.snapshots) {
    Snapshot s;
    s.k = k;
    s.t = (kPi / mu) / k;
    s.grid = wigner(partial_trace(prop.apply(psi0, s.t), Mode::A), c.grid, c.threads, diag);
    s.normalization = s.grid.normalization();
    s.packets = detect_packets(s.grid, c.packet_threshold);
    out.push_back(std::move(s));
  }
  return out;
}

double EntropySeries::dip_time() const {
  return dip ? t[*dip] : std::numeric_limits<double>::quiet_NaN();
}

std::optional<std::size_t> purification_dip(const std::vector<double>& xi) {
  if (xi.empty()) return std::nullopt;
  const double peak = *std::max_element(xi.begin(), xi.end());
  if (!(peak > 0.0)) return std::nullopt;
  double running_max = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    running_max = std::max(running_max, xi[k]);
    if (running_max < 0.5 * peak || xi[k] >= 0.5 * running_max) continue;
    std::size_t best = k;
    for (std::size_t m = k; m < xi.size() && xi[m] <= 0.75 * running_max; ++m) {
      if (xi[m] < xi[best]) best = m;
    }
    return best;
  }
  return std::nullopt;
}

std::vector<EntropySeries> run_entropy(const RunConfig& c, Diagnostics* diag) {
  if (c.n_atoms < 1) throw ConfigError("entropy needs at least one atom (--atoms)");
  const PhysicalParams base = c.params();
  const double t_final = c.t_final.value_or(kPi / base.mu());
  const std::vector<double> times = time_grid(t_final, c.time_points);
  std::vector<EntropySeries> out;
  for (int n = 1; n <= c.n_atoms; ++n) {
    PhysicalParams p = base;
    p.n_atoms = n;
    const HilbertSpace space = space_for(c, n);
    const StateVector psi0 = coherent_state(space, c.alpha, c.beta, atoms_for(c, n), diag);
    EntropySeries s;
    s.n_atoms = n;
    s.t = times;
    s.xi.resize(times.size());
    s.norm_drift = sampled_rk4(
        exact_n_atoms_generator(space, p), psi0, t_final, c.time_points, c.dt,
        [&s](std::size_t k, const StateVector& psi) { s.xi[k] = linear_entropy(partial_trace(psi, Mode::A)); },
        diag);
    s.dip = purification_dip(s.xi);
    out.push_back(std::move(s));
  }
  return out;
}

double qbs_deficit(const PhysicalParams& p, cplx alpha, cplx beta, int n_max, double t_final) {
  const HilbertSpace space = make_space(n_max, n_max, 1);
  const StateVector psi0 = coherent_state(space, alpha, beta, {AtomState::kPlus});
  const HarmonicHamiltonian gen = exact_interaction_generator(space, p);
  const StateVector exact = evolve_to(gen, psi0, t_final, max_time_step(gen.fast_frequency()) / 4.0);
  // On field (x) |+> the one-atom nonlinear generator acts as QBS (x) |+><+|.
  const StateVector effective = propagate_static(nonlinear_one_atom(space, p, true), psi0, t_final);
  return 1.0 - overlap_fidelity(exact, effective);
}

ValidateOutcome run_validate(const RunConfig& c, Diagnostics* diag) {
  const PhysicalParams p = c.params();
  const double t_final = c.t_final.value_or(default_duration(p));
  const std::vector<double> times = time_grid(t_final, c.time_points);
  ValidateOutcome out;

  // One-atom chain: exact -> dispersive -> (drive frame) nonlinear.
  {
    PhysicalParams p1 = p;
    p1.n_atoms = 1;
    const HilbertSpace space = space_for(c, 1);
    const StateVector psi0 = coherent_state(space, c.alpha, c.beta, atoms_for(c, 1), diag);
    const Operator drive = drive_hamiltonian(space, p1);
    const auto exact = sampled_rk4_states(exact_interaction_generator(space, p1), psi0, times, c.dt, diag);
    const auto disp = static_states(dispersive_one_atom(space, p1), psi0, times);
    const auto nl = static_states(nonlinear_one_atom(space, p1, true), psi0, times);
    out.curves.push_back(compare("exact_vs_dispersive", times, exact, disp));
    out.curves.push_back(compare("dispersive_vs_nonlinear", times, into_frame(drive, disp, times), nl));
    out.curves.push_back(compare("exact_vs_nonlinear", times, into_frame(drive, exact, times), nl));
  }

  // N-atom chain: exact -> dispersive -> (drive frame) amplified effective.
  {
    PhysicalParams pn = p;
    pn.n_atoms = std::max(1, c.n_atoms);
    const HilbertSpace space = space_for(c, pn.n_atoms);
    const StateVector psi0 = coherent_state(space, c.alpha, c.beta, atoms_for(c, pn.n_atoms), diag);
    const Operator drive = drive_hamiltonian(space, pn);
    const auto exact = sampled_rk4_states(exact_n_atoms_generator(space, pn), psi0, times, c.dt, diag);
    const auto disp = static_states(dispersive_n_atoms_dynamic(space, pn), psi0, times);
    const auto eff = static_states(many_atom_effective(space, pn, false), psi0, times);
    out.curves.push_back(compare("exact_n_vs_dispersive_n", times, exact, disp));
    out.curves.push_back(compare("dispersive_n_vs_effective", times, into_frame(drive, disp, times), eff));
    out.curves.push_back(compare("exact_n_vs_effective", times, into_frame(drive, exact, times), eff));
  }

  // QBS and single-atom AQBS must coincide.
  {
    const HilbertSpace space = space_for(c, 0);
    const StateVector psi0 = coherent_state(space, c.alpha, c.beta, {}, diag);
    const auto a = static_states(qbs(space, p, true), psi0, times);
    const auto b = static_states(aqbs(space, p, 1, true), psi0, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      out.qbs_aqbs_difference =
          std::max(out.qbs_aqbs_difference, (a[k].amplitudes - b[k].amplitudes).cwiseAbs().maxCoeff());
    }
  }

  // Detuning sweep at fixed mu: Omega = chi^2 / (2 mu) for each Delta/lambda.
  {
    const double mu = p.mu();
    out.sweep_time = t_final;
    const int n_max = space_for(c, 1).n_max_a;
    for (double ratio : c.sweep) {
      SweepPoint s;
      s.ratio = ratio;
      s.lambda = p.lambda;
      s.delta = ratio * p.lambda;
      const double chi = p.lambda / ratio;
      s.omega_rabi = chi * chi / (2.0 * mu);
      PhysicalParams q = p;
      q.n_atoms = 1;
      q.delta = s.delta;
      q.omega_rabi = s.omega_rabi;
      s.mu = q.mu();
      s.deficit = qbs_deficit(q, c.alpha, c.beta, n_max, t_final);
      out.sweep.push_back(s);
    }
    out.sweep_decreasing = true;
    for (std::size_t k = 1; k < out.sweep.size(); ++k) {
      if (!(out.sweep[k].deficit < out.sweep[k - 1].deficit)) out.sweep_decreasing = false;
    }
  }

  const double na = std::norm(c.alpha);
  const double nb = std::norm(c.beta);
  PhysicalParams pn = p;
  pn.n_atoms = std::max(1, c.n_atoms);
  out.regimes.push_back(check_regime(p, na, nb, Stage::kDispersive));
  out.regimes.push_back(check_regime(p, na, nb, Stage::kNonlinear));
  out.regimes.push_back(check_regime(pn, na, nb, Stage::kNAtom));
  return out;
}

EvolveOutcome run_evolve(const RunConfig& c, Diagnostics* diag) {
  const PhysicalParams base = c.params();
  double t_final = 0.0;
  if (c.t_final) {
    t_final = *c.t_final;
  } else if (base.omega_rabi > 0.0) {
    t_final = default_duration(base);
  } else {
    t_final = kPi / base.chi();
  }
  const std::vector<double> times = time_grid(t_final, c.time_points);
  const int n = std::max(1, c.n_atoms);
  PhysicalParams p = base;

  int atoms = 0;
  std::optional<HarmonicHamiltonian> generator;
  std::optional<Operator> fixed;
  EvolveOutcome out;
  auto needs = [&](int count) {
    atoms = count;
    p.n_atoms = std::max(1, count);
    return space_for(c, count);
  };
  switch (c.model) {
    case Model::kExact: {
      const HilbertSpace s = needs(1);
      generator = exact_interaction_generator(s, p);
      break;
    }
    case Model::kExactN: {
      const HilbertSpace s = needs(n);
      generator = exact_n_atoms_generator(s, p);
      break;
    }
    case Model::kDispersive: {
      const HilbertSpace s = needs(1);
      fixed = dispersive_one_atom(s, p);
      break;
    }
    case Model::kDispersiveN: {
      const HilbertSpace s = needs(n);
      fixed = dispersive_n_atoms_dynamic(s, p);
      break;
    }
    case Model::kNonlinear: {
      const HilbertSpace s = needs(1);
      fixed = nonlinear_one_atom(s, p, true);
      break;
    }
    case Model::kBeamSplitter: {
      const HilbertSpace s = needs(0);
      fixed = beam_splitter(s, p);
      out.conserves_photons = true;
      break;
    }
    case Model::kQbs: {
      const HilbertSpace s = needs(0);
      fixed = qbs(s, p, true);
      out.conserves_photons = true;
      break;
    }
    case Model::kAqbs: {
      const HilbertSpace s = needs(0);
      fixed = aqbs(s, p, n, true);
      out.conserves_photons = true;
      break;
    }
    case Model::kManyAtomEffective: {
      const HilbertSpace s = needs(n);
      fixed = many_atom_effective(s, p, false);
      break;
    }
  }
  const HilbertSpace space = generator ? generator->space() : fixed->space;
  const StateVector psi0 = coherent_state(space, c.alpha, c.beta, atoms_for(c, atoms), diag);
  auto record = [&out](const StateVector& psi) {
    out.norm.push_back(psi.norm());
    const StateVector unit = psi.normalized();
    const DensityMatrix ra = partial_trace(unit, Mode::A);
    out.xi_a.push_back(linear_entropy(ra));
    out.n_a.push_back(mean_number(ra));
    out.n_b.push_back(mean_number(partial_trace(unit, Mode::B)));
  };
  out.t = times;
  if (generator) {
    out.time_dependent = true;
    out.norm_drift = sampled_rk4(*generator, psi0, t_final, c.time_points, c.dt,
                                 [&](std::size_t, const StateVector& psi) { record(psi); }, diag);
  } else {
    for (const StateVector& psi : static_states(*fixed, psi0, times)) record(psi);
    for (double x : out.norm) out.norm_drift = std::max(out.norm_drift, std::abs(x - out.norm.front()));
  }
  const double total0 = out.n_a.front() + out.n_b.front();
  for (std::size_t k = 0; k < out.t.size(); ++k) {
    out.photon_drift = std::max(out.photon_drift, std::abs(out.n_a[k] + out.n_b[k] - total0));
  }
  return out;
}

FeasibilityOutcome run_feasibility(const RunConfig& c) {
  std::vector<Setup> setups{microwave_preset(), optical_preset()};
  for (Setup& s : setups) {
    s.n_bar_a = std::norm(c.alpha);
    s.n_bar_b = std::norm(c.beta);
  }
  FeasibilityOutcome out;
  out.rows = feasibility_table(setups);
  for (const Setup& s : setups) {
    PhysicalParams p;
    p.lambda = s.lambda;
    p.delta = s.delta;
    p.omega_rabi = s.omega_rabi;
    out.regimes.push_back({check_regime(p, s.n_bar_a, s.n_bar_b, Stage::kDispersive),
                           check_regime(p, s.n_bar_a, s.n_bar_b, Stage::kNonlinear)});
  }
  return out;
}

}  // namespace bimodal::cli
