// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sparse_util.hpp"

namespace bimodal {

namespace {

using detail::sparse_collective;

void require_detuning(const PhysicalParams& p) {
  if (p.delta == 0.0) throw Error(ErrorCode::kZeroDetuning, "effective builders need delta != 0");
}

void require_one_atom(const HilbertSpace& space) {
  if (space.n_atoms != 1) {
    throw Error(ErrorCode::kAtomCountMismatch,
                "one-atom builder on a space with " + std::to_string(space.n_atoms) + " atoms");
  }
}

void require_n_atoms(const HilbertSpace& space, const PhysicalParams& p) {
  if (space.n_atoms < 1) throw Error(ErrorCode::kNoAtoms, "N-atom builder on a field-only space");
  if (space.n_atoms != p.n_atoms) {
    throw Error(ErrorCode::kAtomCountMismatch,
                "space has " + std::to_string(space.n_atoms) + " atoms, params say " +
                    std::to_string(p.n_atoms));
  }
}

SparseMatrix sigma(const HilbertSpace& space, AtomicOp kind) {
  return detail::atoms(space, detail::atom_register_op(space.n_atoms, kind, 0));
}

SparseMatrix field_sum(const HilbertSpace& space) {
  return detail::sparse_a(space) + detail::sparse_b(space);
}

Operator hermitian(const HilbertSpace& space, const SparseMatrix& m) {
  return detail::densify(space, m, Structure::kHermitian);
}

double drive_fast_frequency(const PhysicalParams& p) {
  return std::max(std::abs(p.delta), 2.0 * std::abs(p.omega_rabi));
}

}  // namespace

double PhysicalParams::chi() const {
  if (delta == 0.0) throw Error(ErrorCode::kZeroDetuning, "chi needs delta != 0");
  return lambda * lambda / delta;
}

double PhysicalParams::mu() const {
  if (omega_rabi <= 0.0) throw Error(ErrorCode::kZeroDrive, "mu needs omega_rabi > 0");
  const double c = chi();
  return c * c / (2.0 * omega_rabi);
}

double PhysicalParams::eps() const {
  if (epsilon) return *epsilon;
  return 2.0 * chi();
}

HarmonicHamiltonian::HarmonicHamiltonian(HilbertSpace space, SparseMatrix h0,
                                         std::vector<HarmonicTerm> terms, double fast_frequency)
    : space_(space), h0_(std::move(h0)), terms_(std::move(terms)), fast_frequency_(fast_frequency) {
  adjoints_.reserve(terms_.size());
  for (const auto& term : terms_) adjoints_.emplace_back(term.a.adjoint());
}

HarmonicHamiltonian HarmonicHamiltonian::constant(const Operator& h, double fast_frequency) {
  return {h.space, detail::sparsify(h.matrix), {}, fast_frequency};
}

Operator HarmonicHamiltonian::at(double t) const {
  SparseMatrix m = h0_;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const cplx ph = std::exp(cplx(0.0, -terms_[k].omega * t));
    m += ph * terms_[k].a;
    m += std::conj(ph) * adjoints_[k];
  }
  return hermitian(space_, m);
}

void HarmonicHamiltonian::apply(double t, const Vector& x, Vector& y) const {
  y.noalias() = h0_ * x;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const cplx ph = std::exp(cplx(0.0, -terms_[k].omega * t));
    y.noalias() += ph * (terms_[k].a * x);
    y.noalias() += std::conj(ph) * (adjoints_[k] * x);
  }
}

HarmonicHamiltonian exact_interaction_generator(const HilbertSpace& space,
                                                const PhysicalParams& p) {
  require_one_atom(space);
  const SparseMatrix seg = sigma(space, AtomicOp::kSigmaEG);
  const SparseMatrix sge = sigma(space, AtomicOp::kSigmaGE);
  SparseMatrix a = p.lambda * (field_sum(space) * seg);
  SparseMatrix h0 = p.omega_rabi * (seg + sge);
  // e^{+i delta t} is the e^{-i w t} slot with w = -delta.
  return {space, std::move(h0), {{std::move(a), -p.delta}}, drive_fast_frequency(p)};
}

Operator exact_interaction(const HilbertSpace& space, const PhysicalParams& p, double t) {
  return exact_interaction_generator(space, p).at(t);
}

Operator dispersive_one_atom(const HilbertSpace& space, const PhysicalParams& p) {
  require_one_atom(space);
  require_detuning(p);
  const double chi = p.chi();
  const SparseMatrix f = detail::sparse_O(space, false);
  SparseMatrix h = p.omega_rabi * (sigma(space, AtomicOp::kSigmaEG) + sigma(space, AtomicOp::kSigmaGE));
  h += chi * SparseMatrix(f * sigma(space, AtomicOp::kSigmaZ));
  h += 2.0 * chi * sigma(space, AtomicOp::kSigmaEE);
  return hermitian(space, h);
}

Operator beam_splitter(const HilbertSpace& space, const PhysicalParams& p) {
  require_detuning(p);
  return hermitian(space, p.chi() * detail::sparse_O(space, false));
}

HarmonicHamiltonian rotating_frame_generator(const HilbertSpace& space, const PhysicalParams& p) {
  require_one_atom(space);
  require_detuning(p);
  SparseMatrix a = p.chi() * (detail::sparse_O(space, true) * sigma(space, AtomicOp::kSigmaPM));
  SparseMatrix h0(space.total_dim, space.total_dim);
  return {space, std::move(h0), {{std::move(a), -2.0 * p.omega_rabi}},
          2.0 * std::abs(p.omega_rabi)};
}

Operator rotating_frame_one_atom(const HilbertSpace& space, const PhysicalParams& p, double t) {
  return rotating_frame_generator(space, p).at(t);
}

Operator op_O(const HilbertSpace& space, bool include_identity) {
  return hermitian(space, detail::sparse_O(space, include_identity));
}

Operator nonlinear_one_atom(const HilbertSpace& space, const PhysicalParams& p,
                            bool include_identity) {
  require_one_atom(space);
  const SparseMatrix o = detail::sparse_O(space, include_identity);
  const SparseMatrix s = sigma(space, AtomicOp::kSigmaPP) - sigma(space, AtomicOp::kSigmaMM);
  return hermitian(space, p.mu() * (o * o * s));
}

Operator qbs(const HilbertSpace& space, double mu, bool include_identity) {
  const SparseMatrix o = detail::sparse_O(space, include_identity);
  return hermitian(space, mu * (o * o));
}

Operator qbs(const HilbertSpace& space, const PhysicalParams& p, bool include_identity) {
  return qbs(space, p.mu(), include_identity);
}

Operator aqbs(const HilbertSpace& space, const PhysicalParams& p, int n, bool include_identity) {
  if (n < 1) throw Error(ErrorCode::kNoAtoms, "aqbs needs N >= 1");
  return qbs(space, n * p.mu(), include_identity);
}

HarmonicHamiltonian exact_n_atoms_generator(const HilbertSpace& space, const PhysicalParams& p) {
  require_n_atoms(space, p);
  const SparseMatrix jp = sparse_collective(space, CollectiveOp::kJPlus);
  const SparseMatrix jm = sparse_collective(space, CollectiveOp::kJMinus);
  SparseMatrix a = p.lambda * (field_sum(space) * jp);
  SparseMatrix h0 = p.eps() * SparseMatrix(jp * jm) + p.omega_rabi * (jp + jm);
  return {space, std::move(h0), {{std::move(a), p.delta}}, drive_fast_frequency(p)};
}

Operator exact_n_atoms(const HilbertSpace& space, const PhysicalParams& p, double t) {
  return exact_n_atoms_generator(space, p).at(t);
}

namespace {

Operator dispersive_n(const HilbertSpace& space, const PhysicalParams& p, double coefficient) {
  require_n_atoms(space, p);
  require_detuning(p);
  const SparseMatrix f = detail::sparse_O(space, false);
  const SparseMatrix jz = sparse_collective(space, CollectiveOp::kJZ);
  const SparseMatrix jx = sparse_collective(space, CollectiveOp::kJPlus) +
                          sparse_collective(space, CollectiveOp::kJMinus);
  return hermitian(space, (coefficient * p.chi()) * SparseMatrix(f * jz) + p.omega_rabi * jx);
}

}  // namespace

Operator dispersive_n_atoms(const HilbertSpace& space, const PhysicalParams& p) {
  return dispersive_n(space, p, -2.0);
}

Operator dispersive_n_atoms_dynamic(const HilbertSpace& space, const PhysicalParams& p) {
  return dispersive_n(space, p, -1.0);
}

HarmonicHamiltonian many_atom_rf_generator(const HilbertSpace& space, const PhysicalParams& p) {
  require_n_atoms(space, p);
  require_detuning(p);
  const SparseMatrix f = detail::sparse_O(space, false);
  SparseMatrix a = -p.chi() * (f * sparse_collective(space, CollectiveOp::kJtPlus));
  SparseMatrix h0(space.total_dim, space.total_dim);
  return {space, std::move(h0), {{std::move(a), -2.0 * p.omega_rabi}},
          2.0 * std::abs(p.omega_rabi)};
}

Operator many_atom_rf(const HilbertSpace& space, const PhysicalParams& p, double t) {
  return many_atom_rf_generator(space, p).at(t);
}

Operator many_atom_effective(const HilbertSpace& space, const PhysicalParams& p,
                             bool include_identity) {
  require_n_atoms(space, p);
  const SparseMatrix o = detail::sparse_O(space, include_identity);
  return hermitian(space, p.mu() * (o * o * sparse_collective(space, CollectiveOp::kJtZ)));
}

Operator drive_hamiltonian(const HilbertSpace& space, const PhysicalParams& p) {
  if (space.n_atoms < 1) throw Error(ErrorCode::kNoAtoms, "drive needs atoms");
  return hermitian(space, p.omega_rabi * (sparse_collective(space, CollectiveOp::kJPlus) +
                                          sparse_collective(space, CollectiveOp::kJMinus)));
}

Operator total_excitation(const HilbertSpace& space) {
  const SparseMatrix a = detail::sparse_a(space);
  const SparseMatrix b = detail::sparse_b(space);
  SparseMatrix n = SparseMatrix(a.adjoint()) * a + SparseMatrix(b.adjoint()) * b;
  for (int i = 0; i < space.n_atoms; ++i) {
    n += detail::atoms(space, detail::atom_register_op(space.n_atoms, AtomicOp::kSigmaEE, i));
  }
  return hermitian(space, n);
}

Operator photon_number(const HilbertSpace& space) {
  const SparseMatrix a = detail::sparse_a(space);
  const SparseMatrix b = detail::sparse_b(space);
  return hermitian(space, SparseMatrix(a.adjoint()) * a + SparseMatrix(b.adjoint()) * b);
}

}  // namespace bimodal
