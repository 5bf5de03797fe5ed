// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "bimodal/ecs.hpp"
#include "bimodal/evolve.hpp"
#include "bimodal/hamiltonian.hpp"
#include "bimodal/observables.hpp"
#include "oracles.hpp"

namespace bimodal {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<int, int>> coprime_pairs(int s_max) {
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s <= s_max; ++s) {
    for (int r = 1; r < 2 * s; ++r) {
      if (std::gcd(r, s) == 1) out.emplace_back(r, s);
    }
  }
  return out;
}

TEST(Schedule, PacketCounts) {
  EXPECT_EQ(packet_count(2, 3), 3);
  EXPECT_EQ(packet_count(1, 3), 6);
  EXPECT_EQ(packet_count(2, 5), 5);
  EXPECT_EQ(packet_count(1, 2), 2);
  EXPECT_EQ(packet_count(3, 7), 14);
  EXPECT_EQ(packet_count(2, 11), 11);
}

TEST(Schedule, GenerationTime) {
  const ECSSchedule s = ECSSchedule::make(2, 5, 0.7);
  EXPECT_EQ(s.j, 5);
  EXPECT_DOUBLE_EQ(s.t_g, kPi / (2.0 * 0.7) * 0.4);
}

TEST(Schedule, Errors) {
  try {
    ECSSchedule::make(2, 4, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCoprime);
  }
  EXPECT_THROW(packet_count(3, 9), Error);
  try {
    ECSSchedule::make(2, 3, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroDrive);
  }
  Diagnostics diag;
  ECSSchedule::make(4, 9, 1.0, &diag);
  EXPECT_TRUE(diag.has(ErrorCode::kNotPrime));
  diag.clear();
  ECSSchedule::make(2, 7, 1.0, &diag);
  EXPECT_TRUE(diag.empty());
}

TEST(Gauss, MatchesDirectSums) {
  for (const auto& [r, s] : coprime_pairs(13)) {
    const int j = packet_count(r, s);
    const auto printed = gauss_coefficients(r, s);
    const auto revival = fractional_revival_amplitudes(r, s);
    ASSERT_EQ(printed.size(), static_cast<std::size_t>(j));
    for (int p = 0; p < j; ++p) {
      EXPECT_LT(std::abs(printed[p] - oracle::gauss(r, s, p, j, 1.0)), 1e-12) << r << "/" << s;
      EXPECT_LT(std::abs(revival[p] - oracle::gauss(r, s, p, j, 2.0)), 1e-12) << r << "/" << s;
    }
  }
}

TEST(Gauss, RevivalWeightsSumToOne) {
  for (const auto& [r, s] : coprime_pairs(13)) {
    double sum = 0.0;
    for (const cplx a : fractional_revival_amplitudes(r, s)) sum += std::norm(a);
    EXPECT_NEAR(sum, 1.0, 1e-12) << r << "/" << s;
  }
}

TEST(Gauss, FrozenValues) {
  // Frozen from the direct sum: |a_p| = 1/sqrt(3) for 2/3, and 1/2 leaves a
  // single rotated packet.
  for (const cplx a : fractional_revival_amplitudes(2, 3)) {
    EXPECT_NEAR(std::abs(a), 1.0 / std::sqrt(3.0), 1e-14);
  }
  const auto a = fractional_revival_amplitudes(1, 2);
  EXPECT_NEAR(std::abs(a[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a[1] - 1.0), 0.0, 1e-15);
}

TEST(Gauss, FractionalRevivalReconstructsKerr) {
  const cplx seed(1.6, -0.7);
  const double mu = 0.37;
  for (const auto& [r, s] : coprime_pairs(13)) {
    const ECSSchedule sch = ECSSchedule::make(r, s, mu);
    const Vector kerr = kerr_evolved_mode(seed, mu, sch.t_g, 30);
    const Vector frac = fractional_revival_mode(seed, sch, 30);
    EXPECT_LT((kerr - frac).norm(), 1e-10) << r << "/" << s;
  }
}

TEST(BsUnitary, UnitaryAndDiagonalizesO) {
  const HilbertSpace s = make_space(6, 6, 0);
  const Operator v = bs_unitary(s);
  EXPECT_TRUE(v.is_unitary());
  const Matrix lhs = v.adjoint().matrix * op_O(s, true).matrix * v.matrix;
  const Matrix nb = number_op(s, Mode::B).matrix;
  const Matrix rhs = 2.0 * nb + Matrix::Identity(s.total_dim, s.total_dim);
  // Only shells with n_a + n_b <= 6 are complete on this truncation.
  for (int na = 0; na <= 6; ++na) {
    for (int nb_ = 0; na + nb_ <= 6; ++nb_) {
      const Index i = s.index(na, nb_);
      EXPECT_LT((lhs.col(i) - rhs.col(i)).norm(), 1e-12) << na << " " << nb_;
    }
  }
}

TEST(BsUnitary, MapsCoherentLabels) {
  const HilbertSpace s = make_space(22, 22, 0);
  const cplx gamma(0.9, 0.2);
  const cplx seed(-0.3, 0.8);
  const StateVector out{s, bs_unitary(s).matrix * coherent_state(s, gamma, seed).amplitudes};
  const cplx alpha = (gamma + seed) / std::sqrt(2.0);
  const cplx beta = (seed - gamma) / std::sqrt(2.0);
  EXPECT_GE(overlap_fidelity(out, coherent_state(s, alpha, beta)), 1.0 - 1e-10);
}

TEST(Kerr, FullRevival) {
  const HilbertSpace s = make_space(0, 20, 0);
  const double mu = 0.9;
  const StateVector psi = coherent_state(s, 0.0, cplx(1.2, 0.5));
  const Operator u = kerr_mode_propagator(s, mu, kPi / (2.0 * mu));
  EXPECT_TRUE(u.is_unitary());
  EXPECT_GE(overlap_fidelity(u.apply(psi), psi), 1.0 - 1e-12);
}

struct EcsCase {
  int r;
  int s;
  int n_max;
};

class EcsVsPropagation : public ::testing::TestWithParam<EcsCase> {};

TEST_P(EcsVsPropagation, MatchesSpectralQbs) {
  const auto c = GetParam();
  const HilbertSpace s = make_space(c.n_max, c.n_max, 0);
  const double mu = 0.5;
  const cplx alpha(1.5, 0.0);
  const cplx beta(0.0, 1.0);
  const ECSSchedule sch = ECSSchedule::make(c.r, c.s, mu);
  const StateVector ecs = ecs_state(s, alpha, beta, sch);
  const StateVector ref = propagate_static(qbs(s, mu, true), coherent_state(s, alpha, beta), sch.t_g);
  EXPECT_GE(overlap_fidelity(ecs, ref), 1.0 - 1e-8);
  const ConsistencyReport rep = consistency_report(s, alpha, beta, sch);
  EXPECT_GE(rep.exact_fidelity, 1.0 - 1e-8);
  EXPECT_EQ(rep.packets, sch.j);
}

INSTANTIATE_TEST_SUITE_P(Schedules, EcsVsPropagation,
                         ::testing::Values(EcsCase{1, 2, 18}, EcsCase{2, 3, 18}, EcsCase{2, 5, 18},
                                           EcsCase{2, 7, 18}, EcsCase{1, 1, 18}, EcsCase{2, 1, 18}));

TEST(Ecs, TwoOverOneIsARevival) {
  const HilbertSpace s = make_space(18, 18, 0);
  const cplx alpha(1.5, 0.0);
  const cplx beta(0.0, 1.0);
  const StateVector out = ecs_state(s, alpha, beta, ECSSchedule::make(2, 1, 0.4));
  EXPECT_GE(overlap_fidelity(out, coherent_state(s, alpha, beta)), 1.0 - 1e-10);
  EXPECT_LT(linear_entropy(partial_trace(out, Mode::A)), 1e-9);
}

TEST(Ecs, ReducedStateClosedFormMatchesTrace) {
  const HilbertSpace s = make_space(30, 30, 0);
  const cplx alpha(2.0, 0.0);
  const cplx beta(1.0, 0.0);
  for (const auto& [r, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {1, 3}}) {
    const ECSSchedule sch = ECSSchedule::make(r, q, 0.3);
    const DensityMatrix numeric = reduced_rho_a(ecs_state(s, alpha, beta, sch));
    const DensityMatrix closed = reduced_rho_a(decompose(alpha, beta, sch), 30);
    EXPECT_LT((numeric.matrix - closed.matrix).cwiseAbs().maxCoeff(), 1e-8) << r << "/" << q;
    EXPECT_GE(fidelity(numeric, closed), 1.0 - 1e-8);
  }
}

TEST(Ecs, EntangledForSmallDenominators) {
  const HilbertSpace s = make_space(30, 30, 0);
  const StateVector out = ecs_state(s, 2.0, 1.0, ECSSchedule::make(2, 3, 0.3));
  EXPECT_GT(linear_entropy(partial_trace(out, Mode::A)), 0.3);
}

TEST(Ecs, PublishedFormIsNotTheEvolvedState) {
  const HilbertSpace s = make_space(30, 30, 0);
  const ConsistencyReport rep = consistency_report(s, 2.0, 1.0, ECSSchedule::make(2, 3, 0.3));
  EXPECT_GE(rep.exact_fidelity, 1.0 - 1e-8);
  EXPECT_LT(rep.published_fidelity, 0.9);
}

TEST(Ecs, FieldOnlyAndTailChecks) {
  const ECSSchedule sch = ECSSchedule::make(2, 3, 0.3);
  EXPECT_THROW(ecs_state(make_space(10, 10, 1), 1.0, 0.5, sch), Error);
  try {
    ecs_state(make_space(4, 4, 0), 2.0, 1.0, sch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncation);
  }
}

}  // namespace
}  // namespace bimodal
