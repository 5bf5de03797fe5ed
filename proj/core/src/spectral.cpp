// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include <numeric>

#include <Eigen/Eigenvalues>

#include "bimodal/evolve.hpp"
#include "sparse_util.hpp"

namespace bimodal {

namespace {

Index find_root(std::vector<Index>& parent, Index i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

SpectralPropagator::SpectralPropagator(const Operator& h) : space_(h.space) {
  if (!h.is_hermitian()) throw Error(ErrorCode::kNotHermitian, "spectral propagation needs H = H^dag");
  const Index n = h.matrix.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (h.matrix(i, j) != cplx(0.0) || h.matrix(j, i) != cplx(0.0)) {
        const Index ri = find_root(parent, i);
        const Index rj = find_root(parent, j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index r = find_root(parent, i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Index>(blocks_.size());
      blocks_.emplace_back();
    }
    blocks_[slot[r]].indices.push_back(i);
  }
  for (Block& b : blocks_) {
    const Index m = static_cast<Index>(b.indices.size());
    Matrix sub(m, m);
    for (Index r = 0; r < m; ++r) {
      for (Index c = 0; c < m; ++c) sub(r, c) = h.matrix(b.indices[r], b.indices[c]);
    }
    sub = 0.5 * (sub + sub.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
    b.energies = es.eigenvalues();
    b.vectors = es.eigenvectors();
  }
}

Vector SpectralPropagator::apply(const Vector& psi, double t) const {
  Vector out(psi.size());
  for (const Block& b : blocks_) {
    const Index m = static_cast<Index>(b.indices.size());
    Vector sub(m);
    for (Index r = 0; r < m; ++r) sub(r) = psi(b.indices[r]);
    Vector coeff = b.vectors.adjoint() * sub;
    for (Index k = 0; k < m; ++k) coeff(k) *= std::exp(cplx(0.0, -b.energies(k) * t));
    sub = b.vectors * coeff;
    for (Index r = 0; r < m; ++r) out(b.indices[r]) = sub(r);
  }
  return out;
}

StateVector SpectralPropagator::apply(const StateVector& psi, double t) const {
  detail::require_same_space(space_, psi.space, "SpectralPropagator::apply");
  return {space_, apply(psi.amplitudes, t)};
}

Operator SpectralPropagator::unitary(double t) const {
  Matrix u = Matrix::Zero(space_.total_dim, space_.total_dim);
  for (const Block& b : blocks_) {
    const Index m = static_cast<Index>(b.indices.size());
    Vector phases(m);
    for (Index k = 0; k < m; ++k) phases(k) = std::exp(cplx(0.0, -b.energies(k) * t));
    const Matrix sub = b.vectors * phases.asDiagonal() * b.vectors.adjoint();
    for (Index r = 0; r < m; ++r) {
      for (Index c = 0; c < m; ++c) u(b.indices[r], b.indices[c]) = sub(r, c);
    }
  }
  return {space_, std::move(u), Structure::kUnitary};
}

StateVector propagate_static(const Operator& h, const StateVector& psi0, double t) {
  detail::require_same_space(h.space, psi0.space, "propagate_static");
  if (t == 0.0) {
    if (!h.is_hermitian()) throw Error(ErrorCode::kNotHermitian, "spectral propagation needs H = H^dag");
    return psi0;
  }
  return SpectralPropagator(h).apply(psi0, t);
}

}  // namespace bimodal
