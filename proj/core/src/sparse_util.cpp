// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "sparse_util.hpp"

#include <cmath>
#include <string>

namespace bimodal::detail {

SparseMatrix sparse_identity(Index n) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return m;
}

SparseMatrix kron(const SparseMatrix& x, const SparseMatrix& y) {
  SparseMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(x.nonZeros() * y.nonZeros()));
  for (Index i = 0; i < x.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator xi(x, i); xi; ++xi) {
      for (Index k = 0; k < y.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator yk(y, k); yk; ++yk) {
          trips.emplace_back(xi.row() * y.rows() + yk.row(), xi.col() * y.cols() + yk.col(),
                             xi.value() * yk.value());
        }
      }
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix lowering(int n_max) {
  SparseMatrix m(n_max + 1, n_max + 1);
  std::vector<Triplet> trips;
  for (int n = 1; n <= n_max; ++n) trips.emplace_back(n - 1, n, std::sqrt(double(n)));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMatrix single_atom(AtomicOp kind) {
  // Basis order {|g>, |e>}; |+> = (1, 1)/sqrt2, |-> = (-1, 1)/sqrt2.
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (kind) {
    case AtomicOp::kSigmaZ: m << -1, 0, 0, 1; break;
    case AtomicOp::kSigmaEG: m << 0, 0, 1, 0; break;
    case AtomicOp::kSigmaGE: m << 0, 1, 0, 0; break;
    case AtomicOp::kSigmaEE: m << 0, 0, 0, 1; break;
    case AtomicOp::kSigmaGG: m << 1, 0, 0, 0; break;
    case AtomicOp::kSigmaPM: m << -0.5, 0.5, -0.5, 0.5; break;
    case AtomicOp::kSigmaMP: m << -0.5, -0.5, 0.5, 0.5; break;
    case AtomicOp::kSigmaPP: m << 0.5, 0.5, 0.5, 0.5; break;
    case AtomicOp::kSigmaMM: m << 0.5, -0.5, -0.5, 0.5; break;
  }
  return sparsify(m);
}

SparseMatrix field_a(const HilbertSpace& space, const SparseMatrix& op) {
  return kron(op, sparse_identity(space.dim_b() * space.dim_atoms()));
}

SparseMatrix field_b(const HilbertSpace& space, const SparseMatrix& op) {
  return kron(sparse_identity(space.dim_a()),
              kron(op, sparse_identity(space.dim_atoms())));
}

SparseMatrix atom_register_op(int n_atoms, AtomicOp kind, int atom_index) {
  // Atom i is bit i, so the highest atom is the leftmost Kronecker factor.
  const Index above = Index{1} << (n_atoms - 1 - atom_index);
  const Index below = Index{1} << atom_index;
  return kron(sparse_identity(above), kron(single_atom(kind), sparse_identity(below)));
}

SparseMatrix atoms(const HilbertSpace& space, const SparseMatrix& register_op) {
  return kron(sparse_identity(space.dim_a() * space.dim_b()), register_op);
}

SparseMatrix sparse_a(const HilbertSpace& space) { return field_a(space, lowering(space.n_max_a)); }

SparseMatrix sparse_b(const HilbertSpace& space) { return field_b(space, lowering(space.n_max_b)); }

SparseMatrix sparse_O(const HilbertSpace& space, bool include_identity) {
  const SparseMatrix a = sparse_a(space);
  const SparseMatrix b = sparse_b(space);
  const SparseMatrix ad = a.adjoint();
  const SparseMatrix bd = b.adjoint();
  SparseMatrix o = ad * a + bd * b + ad * b + a * bd;
  if (include_identity) o += sparse_identity(space.total_dim);
  return o;
}

SparseMatrix sparse_collective(const HilbertSpace& space, CollectiveOp kind) {
  AtomicOp single = AtomicOp::kSigmaEG;
  switch (kind) {
    case CollectiveOp::kJPlus: single = AtomicOp::kSigmaEG; break;
    case CollectiveOp::kJMinus: single = AtomicOp::kSigmaGE; break;
    case CollectiveOp::kJZ: single = AtomicOp::kSigmaZ; break;
    case CollectiveOp::kJtPlus: single = AtomicOp::kSigmaPM; break;
    case CollectiveOp::kJtMinus: single = AtomicOp::kSigmaMP; break;
    case CollectiveOp::kJtZ: break;
  }
  const Index n = space.dim_atoms();
  SparseMatrix reg(n, n);
  for (int i = 0; i < space.n_atoms; ++i) {
    if (kind == CollectiveOp::kJtZ) {
      reg += atom_register_op(space.n_atoms, AtomicOp::kSigmaPP, i);
      reg -= atom_register_op(space.n_atoms, AtomicOp::kSigmaMM, i);
    } else {
      reg += atom_register_op(space.n_atoms, single, i);
    }
  }
  reg.prune(cplx(0.0));
  return atoms(space, reg);
}

Operator densify(const HilbertSpace& space, const SparseMatrix& m, Structure s) {
  return Operator{space, Matrix(m), s};
}

SparseMatrix sparsify(const Matrix& m) {
  SparseMatrix out(m.rows(), m.cols());
  std::vector<Triplet> trips;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != cplx(0.0)) trips.emplace_back(i, j, m(i, j));
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

void require_same_space(const HilbertSpace& x, const HilbertSpace& y, const char* where) {
  if (!(x == y)) {
    throw Error(ErrorCode::kSpaceMismatch, std::string(where) + ": operands live in different spaces");
  }
}

}  // namespace bimodal::detail
