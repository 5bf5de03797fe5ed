// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bimodal/observables.hpp"
#include "oracles.hpp"

namespace bimodal {
namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

DensityMatrix single_mode_pure(const Vector& v) {
  const int n_max = static_cast<int>(v.size()) - 1;
  return {make_space(n_max, 0, 0), v * v.adjoint()};
}

DensityMatrix coherent_rho(cplx alpha, int n_max) {
  return single_mode_pure(oracle::coherent(alpha, n_max));
}

TEST(PartialTrace, ProductStateIsPure) {
  const HilbertSpace s = make_space(12, 12, 1);
  const StateVector psi = coherent_state(s, 1.1, cplx(0.0, -0.8), {AtomState::kPlus});
  EXPECT_LT(linear_entropy(partial_trace(psi, Mode::A)), 1e-12);
  EXPECT_LT(linear_entropy(partial_trace(psi, Mode::B)), 1e-12);
  EXPECT_NEAR(partial_trace(psi, Mode::A).matrix.trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, MaximallyEntangledPair) {
  const HilbertSpace s = make_space(1, 1, 0);
  Vector v = Vector::Zero(4);
  v(s.index(0, 0)) = 1.0 / std::sqrt(2.0);
  v(s.index(1, 1)) = 1.0 / std::sqrt(2.0);
  const StateVector psi{s, v};
  EXPECT_NEAR(linear_entropy(partial_trace(psi, Mode::A)), 0.5, 1e-15);
  EXPECT_NEAR(linear_entropy(partial_trace(psi, Mode::B)), 0.5, 1e-15);
}

TEST(PartialTrace, DensityAndStateAgree) {
  std::mt19937 rng(21);
  const HilbertSpace s = make_space(2, 3, 2);
  for (int k = 0; k < 5; ++k) {
    const StateVector psi{s, oracle::random_state(rng, s.total_dim)};
    const DensityMatrix rho = DensityMatrix::from_state(psi);
    for (Mode m : {Mode::A, Mode::B}) {
      const DensityMatrix x = partial_trace(psi, m);
      const DensityMatrix y = partial_trace(rho, m);
      EXPECT_LT((x.matrix - y.matrix).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
  // Without atoms the two field marginals share their spectrum.
  const HilbertSpace f = make_space(3, 4, 0);
  for (int k = 0; k < 5; ++k) {
    const StateVector psi{f, oracle::random_state(rng, f.total_dim)};
    EXPECT_NEAR(linear_entropy(partial_trace(psi, Mode::A)), linear_entropy(partial_trace(psi, Mode::B)),
                1e-13);
  }
}

TEST(Entropy, InvariantUnderLocalUnitary) {
  std::mt19937 rng(22);
  const HilbertSpace s = make_space(3, 3, 0);
  for (int k = 0; k < 5; ++k) {
    const StateVector psi{s, oracle::random_state(rng, s.total_dim)};
    const Matrix ua = oracle::random_unitary(rng, 4);
    const Matrix ub = oracle::random_unitary(rng, 4);
    Matrix local(16, 16);
    for (int i = 0; i < 4; ++i) {
      for (int k2 = 0; k2 < 4; ++k2) local.block(4 * i, 4 * k2, 4, 4) = ua(i, k2) * ub;
    }
    const StateVector moved{s, local * psi.amplitudes};
    EXPECT_NEAR(linear_entropy(partial_trace(moved, Mode::A)), linear_entropy(partial_trace(psi, Mode::A)),
                1e-12);
  }
}

TEST(Fidelity, PureAndMixed) {
  const HilbertSpace s = make_space(20, 0, 0);
  const StateVector x = coherent_state(s, 1.0, 0.0);
  const StateVector y = coherent_state(s, cplx(0.5, 0.5), 0.0);
  const double pure = fidelity(x, y);
  EXPECT_NEAR(pure, oracle::coherent_overlap_sq(1.0, cplx(0.5, 0.5)), 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::from_state(x), DensityMatrix::from_state(y)), pure, 1e-7);
  EXPECT_NEAR(fidelity(DensityMatrix::from_state(x), DensityMatrix::from_state(x)), 1.0, 1e-7);
  // Orthogonal mixtures have zero fidelity.
  Matrix p0 = Matrix::Zero(21, 21);
  Matrix p1 = Matrix::Zero(21, 21);
  p0(0, 0) = 1.0;
  p1(1, 1) = 0.5;
  p1(2, 2) = 0.5;
  EXPECT_NEAR(fidelity(DensityMatrix{s, p0}, DensityMatrix{s, p1}), 0.0, 1e-12);
}

TEST(Expectation, NumberOfCoherentState) {
  const HilbertSpace s = make_space(30, 0, 0);
  const cplx alpha(1.5, -1.0);
  EXPECT_NEAR(expectation(number_op(s, Mode::A), coherent_state(s, alpha, 0.0)).real(), std::norm(alpha),
              1e-10);
}

TEST(Wigner, VacuumPeak) {
  GridSpec spec;
  spec.q_min = spec.q_max = spec.p_min = spec.p_max = 0.0;
  spec.q_points = spec.p_points = 1;
  const WignerGrid g = wigner(coherent_rho(0.0, 0), spec);
  EXPECT_NEAR(g.w(0, 0), kTwoOverPi, 1e-15);
}

TEST(Wigner, CoherentPeakLocation) {
  for (const cplx alpha : {cplx(3.0, 0.0), cplx(0.0, 2.0), cplx(-1.5, -2.5)}) {
    const WignerGrid g = wigner(coherent_rho(alpha, 40));
    Index i = 0;
    Index k = 0;
    const double peak = g.w.maxCoeff(&i, &k);
    EXPECT_NEAR(g.q[i], alpha.real(), 1e-9) << alpha;
    EXPECT_NEAR(g.p[k], alpha.imag(), 1e-9) << alpha;
    EXPECT_NEAR(peak, kTwoOverPi, 1e-9);
  }
}

TEST(Wigner, NormalizationAndBound) {
  const Vector cat = (oracle::coherent(2.0, 40) + oracle::coherent(-2.0, 40)).normalized();
  const Vector three = (oracle::coherent(2.0, 40) + oracle::coherent(cplx(-1.0, 1.7), 40) +
                        oracle::coherent(cplx(-1.0, -1.7), 40))
                           .normalized();
  for (const Vector& v : {oracle::coherent(0.0, 40), oracle::coherent(cplx(1.0, 2.0), 40), cat, three}) {
    const WignerGrid g = wigner(single_mode_pure(v));
    EXPECT_NEAR(g.normalization(), 1.0, 1e-3);
    EXPECT_LE(g.w.cwiseAbs().maxCoeff(), kTwoOverPi + 1e-12);
  }
}

TEST(Wigner, CatHasNegativeFringes) {
  const Vector cat = (oracle::coherent(2.0, 40) + oracle::coherent(-2.0, 40)).normalized();
  GridSpec spec;
  spec.q_min = -0.05;
  spec.q_max = 0.05;
  spec.p_min = -1.0;
  spec.p_max = 1.0;
  spec.q_points = 3;
  spec.p_points = 41;
  EXPECT_LT(wigner(single_mode_pure(cat), spec).w.minCoeff(), -0.3);
}

TEST(Wigner, RecurrenceMatchesDisplacedParity) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 4; ++k) {
    const Vector a = oracle::random_state(rng, 6);
    const Vector b = oracle::random_state(rng, 6);
    const Matrix rho = 0.7 * a * a.adjoint() + 0.3 * b * b.adjoint();
    for (int n = 0; n < 5; ++n) {
      const double q = u(rng);
      const double p = u(rng);
      GridSpec spec;
      spec.q_min = spec.q_max = q;
      spec.p_min = spec.p_max = p;
      spec.q_points = spec.p_points = 1;
      const double got = wigner({make_space(5, 0, 0), rho}, spec).w(0, 0);
      EXPECT_NEAR(got, oracle::wigner_parity(rho, cplx(q, p), 100), 1e-10) << q << " " << p;
    }
  }
}

TEST(Wigner, ThreadsAgree) {
  const Vector cat = (oracle::coherent(2.0, 30) + oracle::coherent(cplx(0.0, 2.0), 30)).normalized();
  GridSpec spec;
  spec.q_points = spec.p_points = 81;
  const WignerGrid one = wigner(single_mode_pure(cat), spec, 1);
  const WignerGrid four = wigner(single_mode_pure(cat), spec, 4);
  EXPECT_EQ((one.w - four.w).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Wigner, CoarseGridWarns) {
  GridSpec spec;
  spec.q_points = spec.p_points = 33;
  Diagnostics diag;
  wigner(coherent_rho(1.0, 10), spec, 1, &diag);
  EXPECT_TRUE(diag.has(ErrorCode::kGridTooCoarse));
  diag.clear();
  wigner(coherent_rho(1.0, 10), GridSpec{}, 1, &diag);
  EXPECT_TRUE(diag.empty());
  spec.q_points = 0;
  EXPECT_THROW(wigner(coherent_rho(1.0, 10), spec), Error);
}

TEST(Packets, CountsSeparatedCoherentStates) {
  // An incoherent mixture has no interference fringes between the packets.
  Matrix mix = Matrix::Zero(41, 41);
  for (const cplx alpha : {cplx(3.0, 0.0), cplx(-1.5, 2.6), cplx(-1.5, -2.6)}) {
    mix += coherent_rho(alpha, 40).matrix / 3.0;
  }
  const auto packets = detect_packets(wigner({make_space(40, 0, 0), mix}));
  ASSERT_EQ(packets.size(), 3u);
  for (const Packet& pk : packets) EXPECT_NEAR(std::hypot(pk.q, pk.p), 3.0, 0.05);
  const auto vac = detect_packets(wigner(coherent_rho(0.0, 5)));
  ASSERT_EQ(vac.size(), 1u);
  EXPECT_NEAR(vac[0].q, 0.0, 1e-12);
  EXPECT_NEAR(vac[0].p, 0.0, 1e-12);
}

TEST(Packets, EmptyGridThrows) {
  WignerGrid g;
  try {
    detect_packets(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGrid);
  }
}

}  // namespace
}  // namespace bimodal
