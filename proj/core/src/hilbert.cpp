// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/hilbert.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "sparse_util.hpp"

namespace bimodal {

HilbertSpace make_space(int n_max_a, int n_max_b, int n_atoms, Index dimension_cap) {
  if (n_max_a < 0 || n_max_b < 0 || n_atoms < 0) {
    throw Error(ErrorCode::kNegativeArg, "cutoffs and atom count must be non-negative");
  }
  if (n_atoms > 20) {
    throw Error(ErrorCode::kDimensionCap, "too many atoms: " + std::to_string(n_atoms));
  }
  HilbertSpace s{n_max_a, n_max_b, n_atoms, 0};
  s.total_dim = s.dim_a() * s.dim_b() * s.dim_atoms();
  if (s.total_dim > dimension_cap) {
    std::ostringstream msg;
    msg << "total dimension " << s.total_dim << " exceeds cap " << dimension_cap;
    throw Error(ErrorCode::kDimensionCap, msg.str());
  }
  return s;
}

bool Operator::is_hermitian(double tol) const {
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool Operator::is_unitary(double tol) const {
  const Matrix id = Matrix::Identity(matrix.rows(), matrix.cols());
  return (matrix.adjoint() * matrix - id).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::adjoint() const { return {space, matrix.adjoint(), declared}; }

StateVector Operator::apply(const StateVector& psi) const {
  detail::require_same_space(space, psi.space, "Operator::apply");
  return {space, matrix * psi.amplitudes};
}

namespace {

Structure sum_structure(const Operator& x, const Operator& y) {
  return x.declared == Structure::kHermitian && y.declared == Structure::kHermitian
             ? Structure::kHermitian
             : Structure::kGeneral;
}

}  // namespace

Operator operator+(const Operator& x, const Operator& y) {
  detail::require_same_space(x.space, y.space, "operator+");
  return {x.space, x.matrix + y.matrix, sum_structure(x, y)};
}

Operator operator-(const Operator& x, const Operator& y) {
  detail::require_same_space(x.space, y.space, "operator-");
  return {x.space, x.matrix - y.matrix, sum_structure(x, y)};
}

Operator operator*(const Operator& x, const Operator& y) {
  detail::require_same_space(x.space, y.space, "operator*");
  const bool unitary = x.declared == Structure::kUnitary && y.declared == Structure::kUnitary;
  return {x.space, x.matrix * y.matrix, unitary ? Structure::kUnitary : Structure::kGeneral};
}

Operator operator*(cplx c, const Operator& x) { return {x.space, c * x.matrix, Structure::kGeneral}; }

Operator operator*(double c, const Operator& x) {
  return {x.space, c * x.matrix,
          x.declared == Structure::kHermitian ? Structure::kHermitian : Structure::kGeneral};
}

Operator commutator(const Operator& x, const Operator& y) { return x * y - y * x; }

Operator identity(const HilbertSpace& space) {
  return {space, Matrix::Identity(space.total_dim, space.total_dim), Structure::kUnitary};
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
  return {space, amplitudes / n};
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  return {psi.space, psi.amplitudes * psi.amplitudes.adjoint()};
}

double DensityMatrix::trace_deviation() const { return std::abs(matrix.trace() - cplx(1.0)); }

double DensityMatrix::hermiticity_error() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

AtomicProduct uniform_atoms(int n_atoms, AtomState state) {
  return AtomicProduct(static_cast<std::size_t>(std::max(n_atoms, 0)), state);
}

Operator annihilator(const HilbertSpace& space, Mode mode) {
  const SparseMatrix m = mode == Mode::A ? detail::sparse_a(space) : detail::sparse_b(space);
  return detail::densify(space, m, Structure::kGeneral);
}

Operator number_op(const HilbertSpace& space, Mode mode) {
  const SparseMatrix m = mode == Mode::A ? detail::sparse_a(space) : detail::sparse_b(space);
  return detail::densify(space, m.adjoint() * m, Structure::kHermitian);
}

namespace {

bool hermitian_kind(AtomicOp kind) {
  return kind != AtomicOp::kSigmaEG && kind != AtomicOp::kSigmaGE && kind != AtomicOp::kSigmaPM &&
         kind != AtomicOp::kSigmaMP;
}

void require_atoms(const HilbertSpace& space) {
  if (space.n_atoms < 1) throw Error(ErrorCode::kNoAtoms, "space carries no atoms");
}

}  // namespace

Operator atomic_op(const HilbertSpace& space, AtomicOp kind, int atom_index) {
  if (atom_index < 0 || atom_index >= space.n_atoms) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "atom index " + std::to_string(atom_index) + " with " +
                    std::to_string(space.n_atoms) + " atoms");
  }
  const SparseMatrix reg = detail::atom_register_op(space.n_atoms, kind, atom_index);
  return detail::densify(space, detail::atoms(space, reg),
                         hermitian_kind(kind) ? Structure::kHermitian : Structure::kGeneral);
}

Operator collective_op(const HilbertSpace& space, CollectiveOp kind, double t, double omega) {
  require_atoms(space);
  SparseMatrix m = detail::sparse_collective(space, kind);
  if (kind == CollectiveOp::kJtPlus) m *= std::exp(cplx(0.0, 2.0 * omega * t));
  if (kind == CollectiveOp::kJtMinus) m *= std::exp(cplx(0.0, -2.0 * omega * t));
  const bool herm = kind == CollectiveOp::kJZ || kind == CollectiveOp::kJtZ;
  return detail::densify(space, m, herm ? Structure::kHermitian : Structure::kGeneral);
}

Operator displacement(const HilbertSpace& space, Mode mode, cplx alpha) {
  const int n_max = mode == Mode::A ? space.n_max_a : space.n_max_b;
  const Matrix a = Matrix(detail::lowering(n_max));
  // exp(G) with G anti-Hermitian equals exp(-iK) for the Hermitian K = iG.
  const Matrix k = cplx(0.0, 1.0) * (alpha * a.adjoint() - std::conj(alpha) * a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (k + k.adjoint()));
  const Vector phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -1.0)).array().exp().matrix();
  const Matrix d = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  const SparseMatrix ds = detail::sparsify(d);
  const SparseMatrix full = mode == Mode::A ? detail::field_a(space, ds) : detail::field_b(space, ds);
  return detail::densify(space, full, Structure::kUnitary);
}

double poisson_tail(double mean, int n_max) {
  if (mean < 0.0 || n_max < 0) throw Error(ErrorCode::kNegativeArg, "poisson_tail arguments");
  if (mean == 0.0) return 0.0;
  // Sum the tail directly from p(n_max + 1) upward to avoid cancellation.
  int n = n_max + 1;
  double term = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
  double sum = 0.0;
  while (true) {
    sum += term;
    ++n;
    term *= mean / n;
    if (n > mean && term < 1e-18 * std::max(sum, 1e-300)) break;
    if (term == 0.0) break;
  }
  return std::min(sum, 1.0);
}

int min_cutoff(double mean, double tol) {
  int n = 0;
  while (poisson_tail(mean, n) >= tol) ++n;
  return n;
}

Vector coherent_amplitudes(cplx alpha, int n_max) {
  Vector v(n_max + 1);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) v(n) = v(n - 1) * alpha / std::sqrt(double(n));
  return v / v.norm();
}

Vector atomic_amplitudes(const AtomicProduct& atoms) {
  Vector reg = Vector::Ones(1);
  const double r = 1.0 / std::sqrt(2.0);
  // Atom 0 is the least significant bit, so it is the rightmost factor.
  for (const AtomState st : atoms) {
    Eigen::Vector2cd one;
    switch (st) {
      case AtomState::kGround: one << 1.0, 0.0; break;
      case AtomState::kExcited: one << 0.0, 1.0; break;
      case AtomState::kPlus: one << r, r; break;
      case AtomState::kMinus: one << -r, r; break;
    }
    Vector next(reg.size() * 2);
    for (Index hi = 0; hi < 2; ++hi) next.segment(hi * reg.size(), reg.size()) = one(hi) * reg;
    reg = std::move(next);
  }
  return reg;
}

StateVector product_state(const HilbertSpace& space, const Vector& mode_a, const Vector& mode_b,
                          const Vector& atoms) {
  if (mode_a.size() != space.dim_a() || mode_b.size() != space.dim_b() ||
      atoms.size() != space.dim_atoms()) {
    throw Error(ErrorCode::kSpaceMismatch, "factor sizes do not match the space");
  }
  Vector psi(space.total_dim);
  Index k = 0;
  for (Index na = 0; na < space.dim_a(); ++na) {
    for (Index nb = 0; nb < space.dim_b(); ++nb) {
      const cplx c = mode_a(na) * mode_b(nb);
      for (Index at = 0; at < space.dim_atoms(); ++at) psi(k++) = c * atoms(at);
    }
  }
  return {space, psi};
}

namespace {

void check_tail(double mean, int n_max, const char* label, Diagnostics* diag) {
  const double tail = poisson_tail(mean, n_max);
  std::ostringstream msg;
  msg << "mode " << label << " tail mass " << tail << " beyond cutoff " << n_max;
  if (tail > 1e-4) throw Error(ErrorCode::kTruncation, msg.str());
  if (tail > 1e-8) warn(diag, ErrorCode::kTruncation, msg.str());
}

}  // namespace

StateVector coherent_state(const HilbertSpace& space, cplx alpha, cplx beta,
                           const AtomicProduct& atoms, Diagnostics* diag) {
  if (static_cast<int>(atoms.size()) != space.n_atoms) {
    throw Error(ErrorCode::kAtomCountMismatch, "atomic product length differs from n_atoms");
  }
  check_tail(std::norm(alpha), space.n_max_a, "A", diag);
  check_tail(std::norm(beta), space.n_max_b, "B", diag);
  return product_state(space, coherent_amplitudes(alpha, space.n_max_a),
                       coherent_amplitudes(beta, space.n_max_b), atomic_amplitudes(atoms));
}

StateVector fock_state(const HilbertSpace& space, int n_a, int n_b, const AtomicProduct& atoms) {
  if (n_a < 0 || n_b < 0 || n_a > space.n_max_a || n_b > space.n_max_b) {
    throw Error(ErrorCode::kIndexOutOfRange, "Fock label outside the truncated space");
  }
  if (static_cast<int>(atoms.size()) != space.n_atoms) {
    throw Error(ErrorCode::kAtomCountMismatch, "atomic product length differs from n_atoms");
  }
  Vector a = Vector::Zero(space.dim_a());
  Vector b = Vector::Zero(space.dim_b());
  a(n_a) = 1.0;
  b(n_b) = 1.0;
  return product_state(space, a, b, atomic_amplitudes(atoms));
}

double overlap_fidelity(const StateVector& x, const StateVector& y) {
  detail::require_same_space(x.space, y.space, "overlap_fidelity");
  return std::norm(x.amplitudes.dot(y.amplitudes));
}

}  // namespace bimodal
