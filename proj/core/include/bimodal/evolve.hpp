// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "bimodal/hamiltonian.hpp"
#include "bimodal/hilbert.hpp"

namespace bimodal {

/// exp(-i H t) from a Hermitian eigendecomposition. H is split into the
/// connected components of its sparsity graph first, so number-conserving
/// generators diagonalize block by block.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Operator& h);

  const HilbertSpace& space() const noexcept { return space_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }

  Vector apply(const Vector& psi, double t) const;
  StateVector apply(const StateVector& psi, double t) const;
  Operator unitary(double t) const;

 private:
  struct Block {
    std::vector<Index> indices;
    Eigen::VectorXd energies;
    Matrix vectors;
  };
  HilbertSpace space_;
  std::vector<Block> blocks_;
};

StateVector propagate_static(const Operator& h, const StateVector& psi0, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  double norm_drift = 0.0;
  bool failed = false;
};

using Observer = std::function<void(double t, const StateVector& psi)>;

struct TimeDepOptions {
  double dt = 0.0;                // 0 selects the largest allowed step
  int stride = 1;                 // sample every stride-th step
  bool allow_large_step = false;  // accept dt above the limit with a warning
  bool store_states = true;
  double drift_tolerance = 1e-6;
  Observer observer;              // called at every sample when set
};

/// Largest step allowed by the default rule: (2 pi / w_fast) / 50.
double max_time_step(double fast_frequency);

/// Classic fixed-step RK4 for i d(psi)/dt = H(t) psi. The final step lands on
/// t_final exactly. Throws kStepTooLarge or kNormDrift.
Trajectory propagate_timedep(const HarmonicHamiltonian& h, const StateVector& psi0,
                             double t_final, const TimeDepOptions& options = {},
                             Diagnostics* diag = nullptr);

/// Dense variant for arbitrary time-indexed builders.
Trajectory propagate_timedep(const std::function<Operator(double)>& h_of_t, double fast_frequency,
                             const StateVector& psi0, double t_final,
                             const TimeDepOptions& options = {}, Diagnostics* diag = nullptr);

/// Final state only; skips trajectory storage.
StateVector evolve_to(const HarmonicHamiltonian& h, const StateVector& psi0, double t_final,
                      double dt = 0.0, Diagnostics* diag = nullptr);

/// |<psi_exact(t)|psi_eff(t)>|^2. psi_eff = exp(-i H_eff t) psi0. When
/// frame_generator G is given the exact state is mapped into the frame
/// U = exp(-i G t) first, i.e. psi_exact -> exp(+i G t) psi_exact.
double fidelity_vs_effective(const HarmonicHamiltonian& exact, const Operator& effective,
                             const StateVector& psi0, double t,
                             const Operator* frame_generator = nullptr, double dt = 0.0);

}  // namespace bimodal
