// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include "bimodal/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "sparse_util.hpp"

namespace bimodal {

namespace {

DensityMatrix single_mode(int n_max, Matrix m) { return {make_space(n_max, 0, 0), std::move(m)}; }

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

// Wigner value at gamma = q + i p using the Laguerre recurrence. wl is
// scratch of length dim.
double wigner_point(const Matrix& rho, cplx a, std::vector<cplx>& wl) {
  const Index dim = rho.rows();
  wl[0] = std::exp(-2.0 * std::norm(a)) / std::numbers::pi;
  double w = rho(0, 0).real() * wl[0].real();
  for (Index n = 1; n < dim; ++n) {
    wl[n] = 2.0 * a * wl[n - 1] / std::sqrt(double(n));
    w += 2.0 * (rho(0, n) * wl[n]).real();
  }
  for (Index m = 1; m < dim; ++m) {
    const double sm = std::sqrt(double(m));
    cplx temp = wl[m];
    wl[m] = (2.0 * std::conj(a) * temp - sm * wl[m - 1]) / sm;
    w += (rho(m, m) * wl[m]).real();
    for (Index n = m + 1; n < dim; ++n) {
      const cplx next = (2.0 * a * wl[n - 1] - sm * temp) / std::sqrt(double(n));
      temp = wl[n];
      wl[n] = next;
      w += 2.0 * (rho(m, n) * wl[n]).real();
    }
  }
  return 2.0 * w;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

DensityMatrix partial_trace(const StateVector& state, Mode keep) {
  const HilbertSpace& s = state.space;
  const Index da = s.dim_a();
  const Index rest_b = s.dim_b() * s.dim_atoms();
  if (keep == Mode::A) {
    // psi(n_a, rest) is a row-major reshape of the amplitudes.
    const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        state.amplitudes.data(), da, rest_b);
    return single_mode(s.n_max_a, m * m.adjoint());
  }
  const Index db = s.dim_b();
  const Index dat = s.dim_atoms();
  Matrix rho = Matrix::Zero(db, db);
  for (Index na = 0; na < da; ++na) {
    for (Index at = 0; at < dat; ++at) {
      Vector col(db);
      for (Index nb = 0; nb < db; ++nb) col(nb) = state.amplitudes((na * db + nb) * dat + at);
      rho.noalias() += col * col.adjoint();
    }
  }
  return single_mode(s.n_max_b, rho);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep) {
  const HilbertSpace& s = rho.space;
  if (rho.matrix.rows() != s.total_dim) {
    throw Error(ErrorCode::kSpaceMismatch, "density matrix size differs from its space");
  }
  const Index da = s.dim_a();
  const Index db = s.dim_b();
  const Index dat = s.dim_atoms();
  const Index keep_dim = keep == Mode::A ? da : db;
  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (Index i = 0; i < keep_dim; ++i) {
    for (Index k = 0; k < keep_dim; ++k) {
      cplx acc(0.0);
      if (keep == Mode::A) {
        for (Index r = 0; r < db * dat; ++r) acc += rho.matrix(i * db * dat + r, k * db * dat + r);
      } else {
        for (Index na = 0; na < da; ++na) {
          for (Index at = 0; at < dat; ++at) {
            acc += rho.matrix((na * db + i) * dat + at, (na * db + k) * dat + at);
          }
        }
      }
      out(i, k) = acc;
    }
  }
  return single_mode(keep == Mode::A ? s.n_max_a : s.n_max_b, out);
}

double purity(const DensityMatrix& rho) { return rho.matrix.squaredNorm(); }

double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

double fidelity(const StateVector& x, const StateVector& y) { return overlap_fidelity(x, y); }

double fidelity(const DensityMatrix& x, const DensityMatrix& y) {
  if (x.matrix.rows() != y.matrix.rows()) {
    throw Error(ErrorCode::kSpaceMismatch, "fidelity: density matrices differ in size");
  }
  const Matrix sx = psd_sqrt(x.matrix);
  const Matrix inner = psd_sqrt(sx * y.matrix * sx);
  const double tr = inner.trace().real();
  return std::clamp(tr * tr, 0.0, 1.0);
}

cplx expectation(const Operator& op, const StateVector& psi) {
  detail::require_same_space(op.space, psi.space, "expectation");
  return psi.amplitudes.dot(op.matrix * psi.amplitudes);
}

double WignerGrid::normalization() const {
  return pairwise_sum(w.data(), static_cast<std::size_t>(w.size())) * cell_area;
}

WignerGrid wigner(const DensityMatrix& rho, const GridSpec& spec, int threads, Diagnostics* diag) {
  if (spec.q_points < 1 || spec.p_points < 1) {
    throw Error(ErrorCode::kEmptyGrid, "grid needs at least one point per axis");
  }
  if (rho.matrix.rows() != rho.matrix.cols() || rho.matrix.rows() < 1) {
    throw Error(ErrorCode::kSpaceMismatch, "wigner needs a square single-mode density matrix");
  }
  WignerGrid g;
  g.q = linspace(spec.q_min, spec.q_max, spec.q_points);
  g.p = linspace(spec.p_min, spec.p_max, spec.p_points);
  const double dq = spec.q_points > 1 ? (spec.q_max - spec.q_min) / (spec.q_points - 1) : 0.0;
  const double dp = spec.p_points > 1 ? (spec.p_max - spec.p_min) / (spec.p_points - 1) : 0.0;
  g.cell_area = dq * dp;
  // Vacuum standard deviation per quadrature is 1/2 in this convention.
  constexpr double kCellLimit = 0.5 / 4.0;
  if (dq > kCellLimit || dp > kCellLimit) {
    std::ostringstream msg;
    msg << "grid cell " << dq << " x " << dp << " coarser than " << kCellLimit;
    warn(diag, ErrorCode::kGridTooCoarse, msg.str());
  }
  g.w.resize(spec.q_points, spec.p_points);
  const Matrix& m = rho.matrix;
  auto rows = [&](int begin, int end) {
    std::vector<cplx> wl(static_cast<std::size_t>(m.rows()));
    for (int i = begin; i < end; ++i) {
      for (int k = 0; k < spec.p_points; ++k) g.w(i, k) = wigner_point(m, cplx(g.q[i], g.p[k]), wl);
    }
  };
  const int workers = std::clamp(threads, 1, spec.q_points);
  if (workers == 1) {
    rows(0, spec.q_points);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (spec.q_points + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int b = w * chunk;
      const int e = std::min(spec.q_points, b + chunk);
      if (b < e) pool.emplace_back(rows, b, e);
    }
  }
  return g;
}

std::vector<Packet> detect_packets(const WignerGrid& grid, double threshold_fraction) {
  const Index nq = grid.w.rows();
  const Index np = grid.w.cols();
  if (nq == 0 || np == 0) throw Error(ErrorCode::kEmptyGrid, "empty Wigner grid");
  const double cut = threshold_fraction * grid.w.maxCoeff();
  std::vector<Packet> out;
  for (Index i = 1; i + 1 < nq; ++i) {
    for (Index k = 1; k + 1 < np; ++k) {
      const double v = grid.w(i, k);
      if (v < cut) continue;
      bool peak = true;
      for (Index di = -1; di <= 1 && peak; ++di) {
        for (Index dk = -1; dk <= 1; ++dk) {
          if ((di != 0 || dk != 0) && grid.w(i + di, k + dk) >= v) {
            peak = false;
            break;
          }
        }
      }
      if (peak) out.push_back({grid.q[i], grid.p[k], v});
    }
  }
  return out;
}

}  // namespace bimodal
