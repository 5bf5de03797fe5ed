// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bimodal/error.hpp"

namespace bimodal {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr Index kDefaultDimensionCap = 4096;

enum class Mode { A, B };

/// Two truncated bosonic modes tensored with n_atoms two-level atoms.
///
/// Basis index = ((n_a * (n_max_b + 1) + n_b) * 2^n_atoms + atomic_index).
/// Bit i of atomic_index is atom i, with 0 = |g> and 1 = |e>.
struct HilbertSpace {
  int n_max_a = 0;
  int n_max_b = 0;
  int n_atoms = 0;
  Index total_dim = 1;

  Index dim_a() const noexcept { return n_max_a + 1; }
  Index dim_b() const noexcept { return n_max_b + 1; }
  Index dim_atoms() const noexcept { return Index{1} << n_atoms; }
  Index index(int n_a, int n_b, Index atomic = 0) const noexcept {
    return (n_a * dim_b() + n_b) * dim_atoms() + atomic;
  }

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;
};

HilbertSpace make_space(int n_max_a, int n_max_b, int n_atoms,
                        Index dimension_cap = kDefaultDimensionCap);

/// Property a builder promises about its output. Checks are separate.
enum class Structure { kGeneral, kHermitian, kUnitary };

struct StateVector;

struct Operator {
  HilbertSpace space;
  Matrix matrix;
  Structure declared = Structure::kGeneral;

  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-10) const;
  Operator adjoint() const;
  StateVector apply(const StateVector& psi) const;
};

Operator operator+(const Operator& x, const Operator& y);
Operator operator-(const Operator& x, const Operator& y);
Operator operator*(const Operator& x, const Operator& y);
Operator operator*(cplx c, const Operator& x);
Operator operator*(double c, const Operator& x);
Operator commutator(const Operator& x, const Operator& y);
Operator identity(const HilbertSpace& space);

struct StateVector {
  HilbertSpace space;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
  double norm_deviation() const { return std::abs(norm() - 1.0); }
  StateVector normalized() const;
};

struct DensityMatrix {
  HilbertSpace space;
  Matrix matrix;

  static DensityMatrix from_state(const StateVector& psi);
  double trace_deviation() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
};

enum class AtomicOp {
  kSigmaZ,
  kSigmaEG,
  kSigmaGE,
  kSigmaEE,
  kSigmaGG,
  kSigmaPM,  // |+><-|
  kSigmaMP,  // |-><+|
  kSigmaPP,
  kSigmaMM,
};

enum class CollectiveOp { kJPlus, kJMinus, kJZ, kJtPlus, kJtMinus, kJtZ };

enum class AtomState { kGround, kExcited, kPlus, kMinus };

/// One entry per atom; empty for a field-only space.
using AtomicProduct = std::vector<AtomState>;

AtomicProduct uniform_atoms(int n_atoms, AtomState state);

/// Lowering operator of one mode, identity elsewhere.
Operator annihilator(const HilbertSpace& space, Mode mode);
Operator number_op(const HilbertSpace& space, Mode mode);

/// Single-atom operator embedded on atom_index; |+-> = (|e> +- |g>)/sqrt2.
Operator atomic_op(const HilbertSpace& space, AtomicOp kind, int atom_index);

/// Collective operators. J_z has eigenvalues -N..N in steps of 2. The rotated
/// J~_+(t) carries exp(+2i*omega*t) and J~_-(t) carries exp(-2i*omega*t).
Operator collective_op(const HilbertSpace& space, CollectiveOp kind, double t = 0.0,
                       double omega = 0.0);

/// exp(alpha a^dag - conj(alpha) a) on one mode, computed spectrally on the
/// truncated generator.
Operator displacement(const HilbertSpace& space, Mode mode, cplx alpha);

/// P(n > n_max) for a Poisson distribution with the given mean.
double poisson_tail(double mean, int n_max);

/// Smallest cutoff whose Poisson tail is below tol.
int min_cutoff(double mean, double tol = 1e-8);

/// Truncated coherent amplitudes exp(-|a|^2/2) a^n / sqrt(n!), renormalized.
Vector coherent_amplitudes(cplx alpha, int n_max);

Vector atomic_amplitudes(const AtomicProduct& atoms);

/// |alpha> (x) |beta> (x) atoms. Warns when a mode's tail mass exceeds 1e-8
/// and throws kTruncation above 1e-4.
StateVector coherent_state(const HilbertSpace& space, cplx alpha, cplx beta,
                           const AtomicProduct& atoms = {}, Diagnostics* diag = nullptr);

StateVector fock_state(const HilbertSpace& space, int n_a, int n_b,
                       const AtomicProduct& atoms = {});

/// Tensor product of per-factor amplitudes in the fixed basis ordering.
StateVector product_state(const HilbertSpace& space, const Vector& mode_a, const Vector& mode_b,
                          const Vector& atoms);

double overlap_fidelity(const StateVector& x, const StateVector& y);

}  // namespace bimodal
