// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/ecs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bimodal/evolve.hpp"
#include "bimodal/observables.hpp"
#include "sparse_util.hpp"

namespace bimodal {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_coprime(int r, int s) {
  if (r < 1 || s < 1) throw Error(ErrorCode::kNegativeArg, "r and s must be positive");
  if (std::gcd(r, s) != 1) {
    throw Error(ErrorCode::kNotCoprime,
                "gcd(" + std::to_string(r) + ", " + std::to_string(s) + ") != 1");
  }
}

// Reduces the quadratic exponent modulo the period before forming the phase.
std::vector<cplx> quadratic_dft(int r, int s, int numerator_scale) {
  require_coprime(r, s);
  const int j = packet_count(r, s);
  std::vector<cplx> out(static_cast<std::size_t>(j));
  const long long modulus = 2LL * s * j;
  for (int p = 0; p < j; ++p) {
    cplx acc(0.0);
    for (int q = 0; q < j; ++q) {
      // exponent / (2 pi i) = -(scale r q^2)/(2 s) + p q / j, over 2 s j.
      long long num = -static_cast<long long>(numerator_scale) * r * q * q * j +
                      2LL * s * p * q;
      num %= modulus;
      acc += std::exp(kI * (2.0 * kPi * static_cast<double>(num) / static_cast<double>(modulus)));
    }
    out[static_cast<std::size_t>(p)] = acc / static_cast<double>(j);
  }
  return out;
}

Vector raw_coherent(cplx alpha, int n_max) {
  Vector v(n_max + 1);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) v(n) = v(n - 1) * alpha / std::sqrt(double(n));
  return v;
}

// V restricted to the (N+1)-dimensional block spanned by |k, N-k>.
Matrix bs_block(int total) {
  const Index m = total + 1;
  Matrix g = Matrix::Zero(m, m);
  for (int k = 0; k < total; ++k) {
    const double up = (kPi / 4.0) * std::sqrt(double(k + 1) * double(total - k));
    g(k + 1, k) = up;
    g(k, k + 1) = -up;
  }
  const Matrix h = kI * g;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Vector phases(m);
  for (Index k = 0; k < m; ++k) phases(k) = std::exp(-kI * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Applies V to c(n_a, n_b) without truncating intermediate blocks, then
// keeps n_a <= out_a, n_b <= out_b.
Matrix apply_bs_exact(const Matrix& c, int out_a, int out_b) {
  const int in_a = static_cast<int>(c.rows()) - 1;
  const int in_b = static_cast<int>(c.cols()) - 1;
  Matrix out = Matrix::Zero(out_a + 1, out_b + 1);
  for (int total = 0; total <= in_a + in_b; ++total) {
    Vector block = Vector::Zero(total + 1);
    bool any = false;
    for (int k = std::max(0, total - in_b); k <= std::min(total, in_a); ++k) {
      block(k) = c(k, total - k);
      any = any || block(k) != cplx(0.0);
    }
    const int lo = std::max(0, total - out_b);
    const int hi = std::min(total, out_a);
    if (!any || lo > hi) continue;
    const Vector res = bs_block(total) * block;
    for (int k = lo; k <= hi; ++k) out(k, total - k) = res(k);
  }
  return out;
}

void check_label_tail(double mean, int n_max, Diagnostics* diag) {
  const double tail = poisson_tail(mean, n_max);
  std::ostringstream msg;
  msg << "packet tail mass " << tail << " beyond cutoff " << n_max;
  if (tail > 1e-4) throw Error(ErrorCode::kTruncation, msg.str());
  if (tail > 1e-8) warn(diag, ErrorCode::kTruncation, msg.str());
}

void require_field_only(const HilbertSpace& space) {
  if (space.n_atoms != 0) {
    throw Error(ErrorCode::kAtomCountMismatch, "entangled coherent states live on the field only");
  }
}

}  // namespace

ECSSchedule ECSSchedule::make(int r, int s, double mu, Diagnostics* diag) {
  require_coprime(r, s);
  if (!(mu > 0.0)) throw Error(ErrorCode::kZeroDrive, "schedule needs mu > 0");
  if (!is_prime(r) || !is_prime(s)) {
    warn(diag, ErrorCode::kNotPrime,
         "(" + std::to_string(r) + ", " + std::to_string(s) + ") is coprime but not both prime");
  }
  ECSSchedule out;
  out.r = r;
  out.s = s;
  out.j = packet_count(r, s);
  out.mu = mu;
  out.t_g = (kPi / (2.0 * mu)) * (static_cast<double>(r) / static_cast<double>(s));
  return out;
}

int packet_count(int r, int s) {
  require_coprime(r, s);
  return (r % 2 == 1 && s % 2 == 1) ? 2 * s : s;
}

std::vector<cplx> gauss_coefficients(int r, int s) { return quadratic_dft(r, s, 1); }

std::vector<cplx> fractional_revival_amplitudes(int r, int s) { return quadratic_dft(r, s, 2); }

Operator bs_unitary(const HilbertSpace& space) {
  const SparseMatrix a = detail::sparse_a(space);
  const SparseMatrix b = detail::sparse_b(space);
  const SparseMatrix g = (kPi / 4.0) * (SparseMatrix(a.adjoint()) * b - a * SparseMatrix(b.adjoint()));
  // exp(G) = exp(-i K) with the Hermitian K = i G.
  const Operator k = detail::densify(space, kI * g, Structure::kHermitian);
  Operator v = SpectralPropagator(k).unitary(1.0);
  v.declared = Structure::kUnitary;
  return v;
}

Operator kerr_mode_propagator(const HilbertSpace& space, double mu, double t) {
  Vector phases(space.dim_b());
  for (int m = 0; m <= space.n_max_b; ++m) {
    const double w = double(2 * m + 1) * double(2 * m + 1);
    phases(m) = std::exp(-kI * (mu * w * t));
  }
  SparseMatrix diag(space.dim_b(), space.dim_b());
  std::vector<detail::Triplet> trips;
  for (int m = 0; m <= space.n_max_b; ++m) trips.emplace_back(m, m, phases(m));
  diag.setFromTriplets(trips.begin(), trips.end());
  return detail::densify(space, detail::field_b(space, diag), Structure::kUnitary);
}

ECSDecomposition decompose(cplx alpha, cplx beta, const ECSSchedule& schedule) {
  ECSDecomposition d;
  d.schedule = schedule;
  d.amplitudes = fractional_revival_amplitudes(schedule.r, schedule.s);
  d.beta_v = (alpha + beta) / std::sqrt(2.0);
  d.global_phase = std::exp(-kI * (schedule.mu * schedule.t_g));
  const int j = schedule.j;
  for (int p = 0; p < j; ++p) {
    const double th = 2.0 * schedule.mu * schedule.t_g + kPi * p / j;
    const cplx ph = std::exp(-kI * th);
    d.theta.push_back(th);
    d.alpha_f.push_back(ph * (alpha * std::cos(th) - kI * beta * std::sin(th)));
    d.beta_f.push_back(ph * (beta * std::cos(th) - kI * alpha * std::sin(th)));
  }
  return d;
}

ECSDecomposition published_closed_form(cplx alpha, cplx beta, const ECSSchedule& schedule) {
  ECSDecomposition d;
  d.schedule = schedule;
  d.amplitudes = gauss_coefficients(schedule.r, schedule.s);
  d.beta_v = (beta - alpha) / std::sqrt(2.0);
  const int j = schedule.j;
  for (int p = 0; p < j; ++p) {
    const double th = schedule.mu * schedule.t_g + kPi * p / j;
    const cplx pre = 2.0 * std::exp(-kI * th);
    d.theta.push_back(th);
    d.alpha_f.push_back(pre * (alpha * std::sin(th) - beta * std::cos(th)));
    d.beta_f.push_back(pre * (alpha * std::cos(th) - beta * std::sin(th)));
  }
  return d;
}

Vector kerr_evolved_mode(cplx seed, double mu, double t, int n_max) {
  Vector v = raw_coherent(seed, n_max);
  for (int n = 0; n <= n_max; ++n) {
    const double w = double(2 * n + 1) * double(2 * n + 1);
    v(n) *= std::exp(-kI * (mu * w * t));
  }
  return v / v.norm();
}

Vector fractional_revival_mode(cplx seed, const ECSSchedule& schedule, int n_max) {
  const std::vector<cplx> a = fractional_revival_amplitudes(schedule.r, schedule.s);
  Vector v = Vector::Zero(n_max + 1);
  for (int p = 0; p < schedule.j; ++p) {
    if (a[p] == cplx(0.0)) continue;
    const double th = 2.0 * schedule.mu * schedule.t_g + kPi * p / schedule.j;
    v += a[p] * raw_coherent(seed * std::exp(-2.0 * kI * th), n_max);
  }
  v *= std::exp(-kI * (schedule.mu * schedule.t_g));
  return v / v.norm();
}

StateVector ecs_state(const HilbertSpace& space, cplx alpha, cplx beta,
                      const ECSSchedule& schedule, Diagnostics* diag) {
  require_field_only(space);
  const ECSDecomposition dec = decompose(alpha, beta, schedule);
  double worst_a = 0.0;
  double worst_b = 0.0;
  for (std::size_t p = 0; p < dec.size(); ++p) {
    if (std::abs(dec.amplitudes[p]) < 1e-14) continue;
    worst_a = std::max(worst_a, std::norm(dec.alpha_f[p]));
    worst_b = std::max(worst_b, std::norm(dec.beta_f[p]));
  }
  check_label_tail(worst_a, space.n_max_a, diag);
  check_label_tail(worst_b, space.n_max_b, diag);

  const cplx gamma = (alpha - beta) / std::sqrt(2.0);
  const int n_in = std::max({space.n_max_a, space.n_max_b, min_cutoff(std::norm(gamma), 1e-17),
                             min_cutoff(std::norm(dec.beta_v), 1e-17)});
  const Vector in_a = raw_coherent(gamma, n_in);
  Vector in_b = Vector::Zero(n_in + 1);
  for (int p = 0; p < schedule.j; ++p) {
    if (dec.amplitudes[p] == cplx(0.0)) continue;
    in_b += dec.amplitudes[p] * raw_coherent(dec.beta_v * std::exp(-2.0 * kI * dec.theta[p]), n_in);
  }
  in_b *= dec.global_phase;
  const Matrix out = apply_bs_exact(in_a * in_b.transpose(), space.n_max_a, space.n_max_b);
  Vector psi(space.total_dim);
  for (int na = 0; na <= space.n_max_a; ++na) {
    for (int nb = 0; nb <= space.n_max_b; ++nb) psi(space.index(na, nb)) = out(na, nb);
  }
  return StateVector{space, psi}.normalized();
}

StateVector reconstruct(const HilbertSpace& space, const ECSDecomposition& dec) {
  require_field_only(space);
  Matrix c = Matrix::Zero(space.dim_a(), space.dim_b());
  for (std::size_t p = 0; p < dec.size(); ++p) {
    if (dec.amplitudes[p] == cplx(0.0)) continue;
    c += dec.amplitudes[p] * raw_coherent(dec.alpha_f[p], space.n_max_a) *
         raw_coherent(dec.beta_f[p], space.n_max_b).transpose();
  }
  c *= dec.global_phase;
  Vector psi(space.total_dim);
  for (int na = 0; na <= space.n_max_a; ++na) {
    for (int nb = 0; nb <= space.n_max_b; ++nb) psi(space.index(na, nb)) = c(na, nb);
  }
  return StateVector{space, psi}.normalized();
}

DensityMatrix reduced_rho_a(const ECSDecomposition& dec, int n_max_a) {
  const std::size_t j = dec.size();
  Matrix rho = Matrix::Zero(n_max_a + 1, n_max_a + 1);
  std::vector<Vector> kets;
  kets.reserve(j);
  for (std::size_t p = 0; p < j; ++p) kets.push_back(raw_coherent(dec.alpha_f[p], n_max_a));
  for (std::size_t p = 0; p < j; ++p) {
    if (dec.amplitudes[p] == cplx(0.0)) continue;
    for (std::size_t q = 0; q < j; ++q) {
      if (dec.amplitudes[q] == cplx(0.0)) continue;
      const cplx bp = dec.beta_f[p];
      const cplx bq = dec.beta_f[q];
      const cplx overlap = std::exp(-0.5 * std::norm(bp) - 0.5 * std::norm(bq) + std::conj(bq) * bp);
      rho += (dec.amplitudes[p] * std::conj(dec.amplitudes[q]) * overlap) *
             (kets[p] * kets[q].adjoint());
    }
  }
  rho /= rho.trace();
  return {make_space(n_max_a, 0, 0), rho};
}

DensityMatrix reduced_rho_a(const StateVector& state) { return partial_trace(state, Mode::A); }

ConsistencyReport consistency_report(const HilbertSpace& space, cplx alpha, cplx beta,
                                     const ECSSchedule& schedule) {
  const StateVector target = ecs_state(space, alpha, beta, schedule);
  ConsistencyReport rep;
  rep.exact_fidelity = overlap_fidelity(reconstruct(space, decompose(alpha, beta, schedule)), target);
  rep.published_fidelity =
      overlap_fidelity(reconstruct(space, published_closed_form(alpha, beta, schedule)), target);
  rep.packets = schedule.j;
  return rep;
}

}  // namespace bimodal
