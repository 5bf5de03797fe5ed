// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "bimodal/hilbert.hpp"

namespace bimodal {

/// Generation time t_g = (pi / (2 mu)) (r / s) with gcd(r, s) = 1.
struct ECSSchedule {
  int r = 1;
  int s = 1;
  int j = 2;
  double t_g = 0.0;
  double mu = 0.0;

  /// Throws kNotCoprime; warns kNotPrime when r or s is not prime.
  static ECSSchedule make(int r, int s, double mu, Diagnostics* diag = nullptr);
};

/// 2s when r and s are both odd, s otherwise.
int packet_count(int r, int s);

/// (1/j) sum_q exp(-i pi (r/s) q^2 + 2 pi i p q / j), p = 0..j-1, as printed.
std::vector<cplx> gauss_coefficients(int r, int s);

/// (1/j) sum_q exp(-2 pi i (r/s) q^2 + 2 pi i p q / j). These are the weights
/// of the Kerr factor exp(-i mu (2n+1)^2 t_g) once it is split into packets.
std::vector<cplx> fractional_revival_amplitudes(int r, int s);

/// V = exp((pi/4)(a^dag b - a b^dag)) on the truncated space.
Operator bs_unitary(const HilbertSpace& space);

/// exp(-i mu (2 b^dag b + 1)^2 t), diagonal in the Fock basis of mode B.
Operator kerr_mode_propagator(const HilbertSpace& space, double mu, double t);

/// sum_p amplitudes[p] * global_phase * |alpha_f[p]> (x) |beta_f[p]>.
struct ECSDecomposition {
  std::vector<cplx> amplitudes;
  std::vector<cplx> alpha_f;
  std::vector<cplx> beta_f;
  std::vector<double> theta;
  cplx beta_v;  // seed of the Kerr-evolved mode
  cplx global_phase{1.0, 0.0};
  ECSSchedule schedule;

  std::size_t size() const noexcept { return amplitudes.size(); }
};

/// Packet decomposition that follows from the exact operator algebra:
/// theta_p = 2 mu t_g + pi p / j,
/// alpha_f = e^{-i theta_p} (alpha cos theta_p - i beta sin theta_p),
/// beta_f  = e^{-i theta_p} (beta cos theta_p - i alpha sin theta_p).
ECSDecomposition decompose(cplx alpha, cplx beta, const ECSSchedule& schedule);

/// The printed closed form, evaluated verbatim (prefactor 2 and
/// theta_p = mu t_g + pi p / j). Kept for comparison only.
ECSDecomposition published_closed_form(cplx alpha, cplx beta, const ECSSchedule& schedule);

/// e^{-i mu (2n+1)^2 t} applied to the truncated coherent state |seed>.
Vector kerr_evolved_mode(cplx seed, double mu, double t, int n_max);

/// The same mode state assembled from fractional_revival_amplitudes.
Vector fractional_revival_mode(cplx seed, const ECSSchedule& schedule, int n_max);

/// exp(-i mu O^2 t_g)|alpha, beta> built as
/// V [ |(alpha - beta)/sqrt2> (x) sum_p a_p |beta_v e^{-2i theta_p}> ].
/// V is applied exactly per photon-number block before truncating to space.
StateVector ecs_state(const HilbertSpace& space, cplx alpha, cplx beta,
                      const ECSSchedule& schedule, Diagnostics* diag = nullptr);

/// Normalized sum of truncated coherent products described by dec.
StateVector reconstruct(const HilbertSpace& space, const ECSDecomposition& dec);

/// Reduced state of mode A from the packet sum, using Gaussian overlaps
/// <beta_f(p')|beta_f(p)> for the traced mode.
DensityMatrix reduced_rho_a(const ECSDecomposition& dec, int n_max_a);

/// Partial trace over mode B and any atoms.
DensityMatrix reduced_rho_a(const StateVector& state);

struct ConsistencyReport {
  double exact_fidelity = 0.0;      // reconstruct(decompose) vs ecs_state
  double published_fidelity = 0.0;  // reconstruct(published_closed_form) vs ecs_state
  int packets = 0;
};

ConsistencyReport consistency_report(const HilbertSpace& space, cplx alpha, cplx beta,
                                     const ECSSchedule& schedule);

}  // namespace bimodal
