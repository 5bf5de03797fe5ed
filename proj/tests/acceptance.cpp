// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// when any selected criterion fails. Pass criterion ids (AC1 ... AC9) as
// arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bimodal/ecs.hpp"
#include "bimodal/evolve.hpp"
#include "bimodal/hamiltonian.hpp"
#include "bimodal/observables.hpp"
#include "bimodal/regimes.hpp"
#include "cli/experiments.hpp"

namespace {

using namespace bimodal;
using cli::RunConfig;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double round_sig(double x, int digits) {
  if (x == 0.0) return 0.0;
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
  return std::round(x * scale) / scale;
}

double vector_fidelity(const Vector& x, const Vector& y) {
  return std::norm(x.dot(y)) / (x.squaredNorm() * y.squaredNorm());
}

PhysicalParams params_of(const Setup& s) {
  PhysicalParams p;
  p.lambda = s.lambda;
  p.delta = s.delta;
  p.omega_rabi = s.omega_rabi;
  return p;
}

PhysicalParams reference_params(int n_atoms) {
  PhysicalParams p;
  p.lambda = 1.0;
  p.delta = 12.5;
  p.omega_rabi = 1.0;
  p.n_atoms = n_atoms;
  return p;
}

// Rates in Hz (divided by 2 pi) and times in seconds, compared at the number
// of significant figures they are quoted with.
void ac1(Result& r) {
  struct Quoted {
    const char* name;
    double value;
    double quoted;
    int digits;
  };
  const auto start = std::chrono::steady_clock::now();
  const EffectiveParams mw = effective_params(params_of(microwave_preset()));
  const EffectiveParams op = effective_params(params_of(optical_preset()));
  const Quoted rows[] = {
      {"microwave chi/2pi", mw.chi / kTwoPi, 9.4e3, 2},   {"microwave mu/2pi", mw.mu / kTwoPi, 0.94e3, 2},
      {"microwave tau_chi", mw.tau_chi, 0.05e-3, 1},      {"microwave tau_mu", mw.tau_mu, 0.5e-3, 1},
      {"optical chi/2pi", op.chi / kTwoPi, 3.2e6, 2},     {"optical mu/2pi", op.mu / kTwoPi, 0.32e6, 2},
      {"optical tau_chi", op.tau_chi, 0.16e-6, 2},        {"optical tau_mu", op.tau_mu, 1.6e-6, 2},
  };
  for (const Quoted& q : rows) {
    const double rounded = round_sig(q.value, q.digits);
    r.require(std::abs(rounded - q.quoted) <= 1e-9 * q.quoted, q.name);
    r.detail << q.name << "=" << q.value << " ";
  }
  const double elapsed = seconds_since(start);
  r.require(elapsed < 1.0, "runtime < 1 s");
  r.detail << "runtime=" << elapsed << "s";
}

void ac2(Result& r) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig c;
  c.alpha = 3.0;
  c.beta = 2.0;
  c.r = 2;
  c.n_max_a = c.n_max_b = 40;
  c.grid = {-6.0, 6.0, -6.0, 6.0, 161, 161};
  for (int s : {3, 5, 7, 11}) {
    c.s = s;
    const cli::EcsOutcome o = cli::run_ecs(c);
    r.detail << "s=" << s << ":" << o.packets.size() << " ";
    r.require(static_cast<int>(o.packets.size()) == s, "s=" + std::to_string(s) + " packet count");
  }
  const double elapsed = seconds_since(start);
  r.require(elapsed < 60.0, "runtime < 1 min");
  r.detail << "runtime=" << elapsed << "s";
}

void ac3(Result& r) {
  const auto start = std::chrono::steady_clock::now();
  const HilbertSpace space = make_space(24, 24, 0);
  const double mu = reference_params(1).mu();
  const cplx alpha(1.5, 0.0);
  const cplx beta(1.0, 0.0);
  const SpectralPropagator prop(qbs(space, mu, true));
  const StateVector psi0 = coherent_state(space, alpha, beta);
  const std::pair<int, int> cases[] = {{1, 2}, {2, 3}, {1, 3}, {2, 5}};
  for (const auto& [rr, ss] : cases) {
    const ECSSchedule sch = ECSSchedule::make(rr, ss, mu);
    const double f = overlap_fidelity(ecs_state(space, alpha, beta, sch), prop.apply(psi0, sch.t_g));
    r.detail << rr << "/" << ss << ":1-F=" << 1.0 - f << " ";
    r.require(f >= 1.0 - 1e-6, std::to_string(rr) + "/" + std::to_string(ss));
  }
  const double elapsed = seconds_since(start);
  r.require(elapsed < 120.0, "runtime < 2 min");
  r.detail << "runtime=" << elapsed << "s";
}

int gcd(int a, int b) { return b == 0 ? a : gcd(b, a % b); }

void ac4(Result& r) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> seeds{{3.0, 0.0}, {0.0, -3.0}, {0.0, 0.0}};
  for (int k = 0; k < 6; ++k) seeds.push_back(std::polar(3.0 * std::sqrt(u(rng)), kTwoPi * u(rng)));
  const double mu = 0.7;
  double worst = 1.0;
  int cases = 0;
  for (int s = 1; s <= 13; ++s) {
    for (int rr = 1; rr < 2 * s; ++rr) {
      if (gcd(rr, s) != 1) continue;
      const ECSSchedule sch = ECSSchedule::make(rr, s, mu);
      for (const cplx& seed : seeds) {
        const double f = vector_fidelity(fractional_revival_mode(seed, sch, 45), kerr_evolved_mode(seed, mu, sch.t_g, 45));
        worst = std::min(worst, f);
        ++cases;
      }
    }
  }
  r.require(worst >= 1.0 - 1e-8, "fidelity >= 1 - 1e-8");
  r.detail << "cases=" << cases << " worst 1-F=" << 1.0 - worst;
}

void ac5(Result& r) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig c;
  c.command = cli::Command::kEntropy;
  const PhysicalParams p = reference_params(3);
  c.lambda = p.lambda;
  c.delta = p.delta;
  c.omega_rabi = p.omega_rabi;
  c.n_atoms = 3;
  c.alpha = {1.0, 0.0};
  c.beta = {0.0, 1.0};
  c.atom_prep = AtomState::kPlus;
  c.n_max_a = c.n_max_b = 8;
  c.t_final = 400.0;
  c.time_points = 1601;
  const std::vector<cli::EntropySeries> series = cli::run_entropy(c);
  const double t1 = series.front().dip_time();
  for (const cli::EntropySeries& s : series) {
    const std::string tag = "N=" + std::to_string(s.n_atoms);
    r.require(s.xi.front() < 1e-6, tag + " xi(0)");
    r.require(s.dip.has_value(), tag + " dip exists");
    const double tn = s.dip_time();
    const double dev = std::abs(tn * s.n_atoms - t1) / t1;
    r.require(std::isfinite(dev) && dev < 0.15, tag + " t_N N vs t_1");
    r.detail << tag << ": t_N=" << tn << " t_N*N=" << tn * s.n_atoms << " ";
  }
  const double elapsed = seconds_since(start);
  r.require(elapsed < 600.0, "runtime < 10 min");
  r.detail << "runtime=" << elapsed << "s";
}

void ac6(Result& r) {
  const HilbertSpace space = make_space(45, 45, 0);
  const PhysicalParams p = reference_params(1);
  const double chi = p.chi();
  const SpectralPropagator prop(beam_splitter(space, p));
  const std::vector<double> times = cli::time_grid(kPi / chi, 401);
  const StateVector coh = coherent_state(space, cplx(3.0, 0.0), cplx(0.0, 2.0));
  const StateVector one = fock_state(space, 1, 0);
  double coh_max = 0.0;
  double one_max = 0.0;
  for (double t : times) {
    coh_max = std::max(coh_max, linear_entropy(partial_trace(prop.apply(coh, t), Mode::A)));
    one_max = std::max(one_max, linear_entropy(partial_trace(prop.apply(one, t), Mode::A)));
  }
  r.require(coh_max < 1e-6, "coherent product stays pure");
  r.require(std::abs(one_max - 0.5) <= 1e-6, "|1,0> reaches 0.5");
  r.detail << "coherent max xi=" << coh_max << " |1,0> max xi=" << one_max;
}

// Delta = x lambda with Omega = lambda^2 / (2 x^2 mu0) keeps mu = mu0.
void ac7(Result& r) {
  const PhysicalParams base = reference_params(1);
  const double mu0 = base.mu();
  const double t_final = (kPi / mu0) / 5.0;
  std::vector<double> deficits;
  for (double x : {10.0, 20.0, 40.0}) {
    PhysicalParams q = base;
    q.delta = x * base.lambda;
    q.omega_rabi = base.lambda * base.lambda / (2.0 * x * x * mu0);
    deficits.push_back(cli::qbs_deficit(q, cplx(1.0, 0.0), cplx(0.0, 1.0), 8, t_final));
    r.detail << "x=" << x << ":" << deficits.back() << " ";
  }
  r.require(deficits[1] < deficits[0] && deficits[2] < deficits[1], "strictly decreasing deficit");
}

void ac8(Result& r) {
  const auto start = std::chrono::steady_clock::now();
  const PhysicalParams p = reference_params(2);

  // Norm drift of the exact N-atom integration and of spectral propagation.
  {
    const HilbertSpace space = make_space(8, 8, 2);
    const auto gen = exact_n_atoms_generator(space, p);
    const StateVector psi = coherent_state(space, cplx(1.0, 0.0), cplx(0.0, 1.0), uniform_atoms(2, AtomState::kPlus));
    TimeDepOptions opt;
    opt.dt = max_time_step(gen.fast_frequency()) / 4.0;
    opt.store_states = false;
    const double drift = propagate_timedep(gen, psi, 100.0, opt).norm_drift;
    r.require(drift < 1e-6, "RK4 norm drift");
    r.detail << "rk4 drift=" << drift << " ";
  }

  // Photon number under BS, QBS and AQBS.
  {
    const HilbertSpace space = make_space(20, 20, 0);
    const Operator n_tot = photon_number(space);
    const Operator n_sq = n_tot * n_tot;
    const StateVector psi = coherent_state(space, cplx(1.5, 0.5), cplx(-1.0, 1.0));
    const std::pair<const char*, Operator> models[] = {
        {"bs", beam_splitter(space, p)}, {"qbs", qbs(space, p, true)}, {"aqbs", aqbs(space, p, 3, true)}};
    for (const auto& [name, h] : models) {
      const SpectralPropagator prop(h);
      const double mean0 = expectation(n_tot, psi).real();
      const double var0 = expectation(n_sq, psi).real() - mean0 * mean0;
      double dev = 0.0;
      for (double t : cli::time_grid(kPi / p.mu(), 101)) {
        const StateVector s = prop.apply(psi, t);
        const double mean = expectation(n_tot, s).real();
        const double var = expectation(n_sq, s).real() - mean * mean;
        dev = std::max({dev, std::abs(mean - mean0), std::abs(var - var0)});
      }
      r.require(dev < 1e-10, std::string(name) + " photon number");
      r.detail << name << " dN=" << dev << " ";
    }
  }

  // Wigner normalization on an ECS and on a cat state.
  {
    RunConfig c;
    c.n_max_a = c.n_max_b = 30;
    const double norm_ecs = cli::run_ecs(c).normalization;
    const HilbertSpace mode = make_space(0, 20, 0);
    const StateVector cat{mode, coherent_state(mode, 0.0, 2.0).amplitudes + coherent_state(mode, 0.0, -2.0).amplitudes};
    const double norm_cat = wigner(partial_trace(cat.normalized(), Mode::B)).normalization();
    r.require(std::abs(norm_ecs - 1.0) <= 1e-3 && std::abs(norm_cat - 1.0) <= 1e-3, "Wigner normalization");
    r.detail << "wigner norm ecs=" << norm_ecs << " cat=" << norm_cat << " ";
  }

  // V^dag O V = 2 b^dag b + 1 and the coherent-label maps, as state fidelities.
  {
    const int n_max = 12;
    const HilbertSpace space = make_space(n_max, n_max, 0);
    const Operator v = bs_unitary(space);
    const Matrix lhs = v.adjoint().matrix * op_O(space, true).matrix * v.matrix;
    const Matrix rhs = 2.0 * number_op(space, Mode::B).matrix + Matrix::Identity(space.total_dim, space.total_dim);
    std::mt19937 rng(8);
    std::normal_distribution<double> g;
    double worst = 1.0;
    for (int k = 0; k < 20; ++k) {
      Vector psi = Vector::Zero(space.total_dim);
      for (int na = 0; na <= n_max; ++na) {
        for (int nb = 0; na + nb <= n_max; ++nb) psi(space.index(na, nb)) = cplx(g(rng), g(rng));
      }
      worst = std::min(worst, vector_fidelity(lhs * psi, rhs * psi));
    }
    r.require(worst >= 1.0 - 1e-8, "V^dag O V identity");
    r.detail << "VdOV 1-F=" << 1.0 - worst << " ";

    const HilbertSpace big = make_space(45, 45, 0);
    const Operator vb = bs_unitary(big);
    double worst_d = 1.0;
    for (const auto& [a, b] : {std::pair<cplx, cplx>{3.0, 2.0}, {cplx(1.0, 1.0), cplx(0.0, -1.5)}, {0.5, cplx(0.0, 2.0)}}) {
      const StateVector in = coherent_state(big, a, b);
      const StateVector down{big, vb.matrix.adjoint() * in.amplitudes};
      const StateVector up{big, vb.matrix * in.amplitudes};
      const double s2 = std::sqrt(2.0);
      worst_d = std::min(worst_d, overlap_fidelity(down, coherent_state(big, (a - b) / s2, (a + b) / s2)));
      worst_d = std::min(worst_d, overlap_fidelity(up, coherent_state(big, (a + b) / s2, (b - a) / s2)));
    }
    r.require(worst_d >= 1.0 - 1e-8, "displacement identities");
    r.detail << "displacement 1-F=" << 1.0 - worst_d << " ";
  }

  const double elapsed = seconds_since(start);
  r.require(elapsed < 300.0, "runtime < 5 min");
  r.detail << "runtime=" << elapsed << "s";
}

void ac9(Result& r) {
  const PhysicalParams p = reference_params(2);
  const HilbertSpace space = make_space(5, 5, 2);
  const auto gen = exact_n_atoms_generator(space, p);
  const StateVector psi = coherent_state(space, cplx(0.5, 0.0), cplx(0.0, 0.3), uniform_atoms(2, AtomState::kPlus));
  const double t = 2.0;
  const double dt = max_time_step(gen.fast_frequency());
  const Vector y1 = evolve_to(gen, psi, t, dt).amplitudes;
  const Vector y2 = evolve_to(gen, psi, t, dt / 2.0).amplitudes;
  const Vector y4 = evolve_to(gen, psi, t, dt / 4.0).amplitudes;
  const Vector reference = y4 + (y4 - y2) / 15.0;
  const double e1 = (y1 - reference).norm();
  const double e2 = (y2 - reference).norm();
  const double ratio = e1 / e2;
  r.require(ratio >= 12.0 && ratio <= 20.0, "ratio in [12, 20]");
  r.detail << "dt=" << dt << " e(dt)=" << e1 << " e(dt/2)=" << e2 << " ratio=" << ratio;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<void(Result&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"AC1", "effective rates and times of both presets", ac1},
      {"AC2", "mode-A Wigner packet counts for s in {3,5,7,11}", ac2},
      {"AC3", "analytic ECS vs spectral QBS evolution", ac3},
      {"AC4", "fractional-revival decomposition vs Kerr evolution", ac4},
      {"AC5", "linear-entropy purification times scale as 1/N", ac5},
      {"AC6", "beam-splitter entanglement dichotomy", ac6},
      {"AC7", "QBS deficit decreases with detuning at fixed mu", ac7},
      {"AC8", "invariant suites", ac8},
      {"AC9", "RK4 dt-halving error ratio", ac9},
  };
  std::vector<std::string> selected(argv + 1, argv + argc);
  bool all_pass = true;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    ++ran;
    Result r;
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << "exception: " << e.what();
    }
    all_pass = all_pass && r.pass;
    std::printf("%s %s  %s | %s\n", c.id, r.pass ? "PASS" : "FAIL", c.title, r.detail.str().c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matches the arguments\n");
    return 2;
  }
  return all_pass ? 0 : 1;
}
