// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "bimodal/hilbert.hpp"

namespace bimodal::detail {

using Triplet = Eigen::Triplet<cplx>;

SparseMatrix sparse_identity(Index n);
SparseMatrix kron(const SparseMatrix& x, const SparseMatrix& y);

// Single-mode lowering operator on n_max + 1 levels.
SparseMatrix lowering(int n_max);

// 2x2 operator in the {|g>, |e>} basis.
SparseMatrix single_atom(AtomicOp kind);

SparseMatrix field_a(const HilbertSpace& space, const SparseMatrix& op);
SparseMatrix field_b(const HilbertSpace& space, const SparseMatrix& op);

// Operator on the atomic register only (2^N square).
SparseMatrix atom_register_op(int n_atoms, AtomicOp kind, int atom_index);
SparseMatrix atoms(const HilbertSpace& space, const SparseMatrix& register_op);

SparseMatrix sparse_a(const HilbertSpace& space);
SparseMatrix sparse_b(const HilbertSpace& space);

// a^dag a + b^dag b + a^dag b + a b^dag, optionally + 1.
SparseMatrix sparse_O(const HilbertSpace& space, bool include_identity);

SparseMatrix sparse_collective(const HilbertSpace& space, CollectiveOp kind);

Operator densify(const HilbertSpace& space, const SparseMatrix& m, Structure s);
SparseMatrix sparsify(const Matrix& m);

void require_same_space(const HilbertSpace& x, const HilbertSpace& y, const char* where);

}  // namespace bimodal::detail
