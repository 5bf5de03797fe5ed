// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "bimodal/hilbert.hpp"

namespace bimodal {

/// Reduced state of one mode. The result lives on make_space(n_max, 0, 0).
DensityMatrix partial_trace(const StateVector& state, Mode keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep);

double purity(const DensityMatrix& rho);

/// 1 - Tr(rho^2).
double linear_entropy(const DensityMatrix& rho);

/// |<x|y>|^2 for pure states; (Tr sqrt(sqrt(x) y sqrt(x)))^2 for mixed ones.
double fidelity(const StateVector& x, const StateVector& y);
double fidelity(const DensityMatrix& x, const DensityMatrix& y);

cplx expectation(const Operator& op, const StateVector& psi);

struct GridSpec {
  double q_min = -8.0;
  double q_max = 8.0;
  double p_min = -8.0;
  double p_max = 8.0;
  int q_points = 161;
  int p_points = 161;

  bool operator==(const GridSpec&) const = default;
};

/// W(q, p) sampled on a grid; w(i, k) belongs to (q[i], p[k]).
struct WignerGrid {
  std::vector<double> q;
  std::vector<double> p;
  Eigen::MatrixXd w;
  double cell_area = 0.0;

  /// Pairwise sum of W * cell_area.
  double normalization() const;
};

/// Wigner function of a single-mode state with gamma = q + i p, so |alpha>
/// peaks at (Re alpha, Im alpha) and the vacuum has W(0, 0) = 2/pi. Evaluated
/// with the Laguerre recurrence for the displaced-parity form. Rows are split
/// across `threads` workers. Warns kGridTooCoarse when a cell side exceeds
/// a quarter of the vacuum width.
WignerGrid wigner(const DensityMatrix& rho, const GridSpec& spec = {}, int threads = 1,
                  Diagnostics* diag = nullptr);

struct Packet {
  double q = 0.0;
  double p = 0.0;
  double value = 0.0;
};

/// Strict 8-neighbour maxima on interior points with W >= fraction * max(W).
std::vector<Packet> detect_packets(const WignerGrid& grid, double threshold_fraction = 0.1);

}  // namespace bimodal
