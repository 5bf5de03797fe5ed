// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "bimodal/hilbert.hpp"

namespace bimodal {

/// Laboratory knobs. All frequencies are angular (rad/s); hbar = 1.
struct PhysicalParams {
  double lambda = 0.0;      // atom-mode coupling, equal for both modes
  double delta = 0.0;       // detuning, sign meaningful
  double omega_rabi = 0.0;  // classical drive Rabi frequency
  int n_atoms = 1;
  std::optional<double> epsilon;  // N-atom level shift; defaults to 2 lambda^2 / delta

  double chi() const;
  double mu() const;
  double eps() const;
};

struct EffectiveParams {
  double chi = 0.0;
  double mu = 0.0;
  double tau_chi = 0.0;
  double tau_mu = 0.0;
};

/// H(t) = H0 + sum_k (A_k exp(-i w_k t) + A_k^dag exp(+i w_k t)).
struct HarmonicTerm {
  SparseMatrix a;
  double omega = 0.0;
};

class HarmonicHamiltonian {
 public:
  HarmonicHamiltonian(HilbertSpace space, SparseMatrix h0, std::vector<HarmonicTerm> terms,
                      double fast_frequency);

  static HarmonicHamiltonian constant(const Operator& h, double fast_frequency);

  const HilbertSpace& space() const noexcept { return space_; }
  double fast_frequency() const noexcept { return fast_frequency_; }

  Operator at(double t) const;

  /// y = H(t) x.
  void apply(double t, const Vector& x, Vector& y) const;

 private:
  HilbertSpace space_;
  SparseMatrix h0_;
  std::vector<HarmonicTerm> terms_;
  std::vector<SparseMatrix> adjoints_;
  double fast_frequency_;
};

// One-atom chain.

/// lambda (a + b) e^{i delta t} sigma_eg + H.c. + omega (sigma_eg + sigma_ge).
Operator exact_interaction(const HilbertSpace& space, const PhysicalParams& p, double t);
HarmonicHamiltonian exact_interaction_generator(const HilbertSpace& space,
                                                const PhysicalParams& p);

/// omega (sigma_eg + sigma_ge) + chi F sigma_z + 2 chi sigma_ee with
/// F = a^dag a + b^dag b + a^dag b + a b^dag.
Operator dispersive_one_atom(const HilbertSpace& space, const PhysicalParams& p);

/// chi F on the field, identity on atoms. chi = lambda^2 / delta; the
/// lambda^2 / omega variant that sometimes appears in print is a slip.
Operator beam_splitter(const HilbertSpace& space, const PhysicalParams& p);

/// chi O (sigma_pm e^{2i omega t} + sigma_mp e^{-2i omega t}), O with identity.
Operator rotating_frame_one_atom(const HilbertSpace& space, const PhysicalParams& p, double t);
HarmonicHamiltonian rotating_frame_generator(const HilbertSpace& space, const PhysicalParams& p);

/// F, or F + 1 when include_identity is set.
Operator op_O(const HilbertSpace& space, bool include_identity = true);

/// mu O^2 (sigma_pp - sigma_mm).
Operator nonlinear_one_atom(const HilbertSpace& space, const PhysicalParams& p,
                            bool include_identity = true);

/// mu O^2 on the field factors.
Operator qbs(const HilbertSpace& space, const PhysicalParams& p, bool include_identity = true);
Operator qbs(const HilbertSpace& space, double mu, bool include_identity = true);

/// N mu O^2 on the field factors.
Operator aqbs(const HilbertSpace& space, const PhysicalParams& p, int n,
              bool include_identity = true);

// N-atom chain.

/// lambda [(a + b) e^{-i delta t} J_+ + H.c.] + eps J_+ J_- + omega (J_+ + J_-).
Operator exact_n_atoms(const HilbertSpace& space, const PhysicalParams& p, double t);
HarmonicHamiltonian exact_n_atoms_generator(const HilbertSpace& space, const PhysicalParams& p);

/// -2 chi F J_z + omega (J_+ + J_-), coefficient as printed. The generated
/// dynamics of the N-atom model follow -chi F J_z; see dispersive_n_atoms_dynamic.
Operator dispersive_n_atoms(const HilbertSpace& space, const PhysicalParams& p);

/// -chi F J_z + omega (J_+ + J_-).
Operator dispersive_n_atoms_dynamic(const HilbertSpace& space, const PhysicalParams& p);

/// -chi F (J~_+(t) + J~_-(t)).
Operator many_atom_rf(const HilbertSpace& space, const PhysicalParams& p, double t);
HarmonicHamiltonian many_atom_rf_generator(const HilbertSpace& space, const PhysicalParams& p);

/// mu O^2 J~_z.
Operator many_atom_effective(const HilbertSpace& space, const PhysicalParams& p,
                             bool include_identity = true);

/// omega (J_+ + J_-); for one atom this is omega (sigma_eg + sigma_ge).
Operator drive_hamiltonian(const HilbertSpace& space, const PhysicalParams& p);

/// a^dag a + b^dag b + sum_i sigma_ee^(i).
Operator total_excitation(const HilbertSpace& space);

/// a^dag a + b^dag b.
Operator photon_number(const HilbertSpace& space);

}  // namespace bimodal
