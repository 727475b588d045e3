// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chronoq/optimize.hpp"

namespace chronoq {

std::size_t SchmidtDecomposition::rank() const {
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(), [](double c) { return c > kTolAlg; }));
}

namespace {

void require_bipartite(std::size_t total, const std::vector<std::size_t>& dims) {
  if (dims.size() != 2 || dims[0] == 0 || dims[1] == 0 || dims[0] * dims[1] != total) {
    throw std::invalid_argument("bipartite factor dimensions do not match the state");
  }
}

Operator coefficient_matrix(const StateVector& state, const std::vector<std::size_t>& dims) {
  require_bipartite(state.dim(), dims);
  const auto da = static_cast<Eigen::Index>(dims[0]);
  const auto db = static_cast<Eigen::Index>(dims[1]);
  Operator c(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) c(i, j) = state.amplitudes()(i * db + j);
  return c;
}

}  // namespace

SchmidtDecomposition schmidt(const StateVector& state, const std::vector<std::size_t>& dims) {
  const Operator c = coefficient_matrix(state, dims);
  Eigen::JacobiSVD<Operator> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= kTolAlg) continue;
    out.coefficients.push_back(sv(k));
    out.left_basis.push_back(svd.matrixU().col(k));
    out.right_basis.push_back(svd.matrixV().col(k).conjugate());
  }
  return out;
}

WernerState werner_state(double F) {
  if (F < 0.0 || F > 1.0) throw std::invalid_argument("werner_state: F must lie in [0, 1]");
  auto proj = [](BellLabel l) {
    const Vec v = bell_state(l).amplitudes();
    return Operator(v * v.adjoint());
  };
  Operator m = F * proj(BellLabel::PsiMinus) +
               (1.0 - F) / 3.0 * (proj(BellLabel::PsiPlus) + proj(BellLabel::PhiPlus) + proj(BellLabel::PhiMinus));
  return {F, DensityOperator::from_unnormalized(m)};
}

Operator partial_transpose(const DensityOperator& rho, const std::vector<std::size_t>& dims, TransposeSide side) {
  require_bipartite(rho.dim(), dims);
  const auto da = static_cast<Eigen::Index>(dims[0]);
  const auto db = static_cast<Eigen::Index>(dims[1]);
  const Operator& m = rho.matrix();
  Operator out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l) {
          const cplx v = m(i * db + k, j * db + l);
          if (side == TransposeSide::A) out(j * db + k, i * db + l) = v;
          else out(i * db + l, j * db + k) = v;
        }
  return out;
}

double ppt_min_eigenvalue(const DensityOperator& rho, const std::vector<std::size_t>& dims, TransposeSide side) {
  return hermitian_eigenvalues(partial_transpose(rho, dims, side)).minCoeff();
}

double concurrence(const StateVector& state, const std::vector<std::size_t>& dims) {
  require_bipartite(state.dim(), dims);
  const DensityOperator ra = partial_trace(DensityOperator::pure(state), dims, {0});
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity(ra))));
}

Operator psd_sqrt(const Operator& m) {
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

StateDistance state_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("state_distance: dimension mismatch");
  const Operator sr = psd_sqrt(rho.matrix());
  const Operator inner_m = sr * sigma.matrix() * sr;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (inner_m + inner_m.adjoint()), Eigen::EigenvaluesOnly);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  const Eigen::VectorXd diff = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  StateDistance d;
  d.fidelity = std::min(1.0, tr * tr);
  d.trace_distance = std::min(1.0, 0.5 * diff.cwiseAbs().sum());
  return d;
}

void require_dichotomic(const ObservableSettings& s) {
  for (const Operator* op : {&s.A1, &s.A2, &s.B1, &s.B2}) {
    if (op->rows() != 2 || op->cols() != 2) throw std::invalid_argument("settings: expected qubit observables");
    if (!is_hermitian(*op)) throw std::invalid_argument("settings: observable is not Hermitian");
    if (((*op) * (*op) - Operator::Identity(2, 2)).cwiseAbs().maxCoeff() > kTolAlg) {
      throw std::invalid_argument("settings: observable is not dichotomic");
    }
  }
}

ObservableSettings reference_chsh_settings() {
  const double s2 = std::numbers::sqrt2;
  const Operator z = pauli('Z');
  const Operator x = pauli('X');
  return {z, x, (-z - x) / s2, (z - x) / s2};
}

Operator bloch_observable(const Eigen::Vector3d& n) {
  const Eigen::Vector3d u = n.normalized();
  return u(0) * pauli('X') + u(1) * pauli('Y') + u(2) * pauli('Z');
}

double chsh_value(const DensityOperator& rho, const ObservableSettings& s) {
  if (rho.dim() != 4) throw std::invalid_argument("chsh_value: two-qubit state expected");
  require_dichotomic(s);
  auto e = [&](const Operator& a, const Operator& b) { return expectation(rho, tensor_product(a, b)); };
  return e(s.A1, s.B1) + e(s.A2, s.B1) + e(s.A2, s.B2) - e(s.A1, s.B2);
}

Eigen::Matrix3d correlation_tensor(const DensityOperator& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("correlation_tensor: two-qubit state expected");
  const char axes[3] = {'X', 'Y', 'Z'};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = expectation(rho, tensor_product(pauli(axes[i]), pauli(axes[j])));
  return t;
}

namespace {

double planar_chsh(const Eigen::Vector2d& sigma, const std::array<double, 4>& a) {
  auto c = [&](double al, double be) {
    return sigma(0) * std::cos(al) * std::cos(be) + sigma(1) * std::sin(al) * std::sin(be);
  };
  return c(a[0], a[2]) + c(a[1], a[2]) + c(a[1], a[3]) - c(a[0], a[3]);
}

}  // namespace

ChshOptimum chsh_optimize(const DensityOperator& rho) {
  const Eigen::Matrix3d t = correlation_tensor(rho);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector2d sigma = svd.singularValues().head<2>();

  constexpr int kGrid = 24;
  const double step = 2.0 * std::numbers::pi / kGrid;
  std::array<double, 4> best{};
  double best_v = -1e300;
  double cs[kGrid], sn[kGrid];
  for (int i = 0; i < kGrid; ++i) {
    cs[i] = std::cos(i * step);
    sn[i] = std::sin(i * step);
  }
  auto corr = [&](int al, int be) { return sigma(0) * cs[al] * cs[be] + sigma(1) * sn[al] * sn[be]; };
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j)
      for (int k = 0; k < kGrid; ++k)
        for (int l = 0; l < kGrid; ++l) {
          const double v = corr(i, k) + corr(j, k) + corr(j, l) - corr(i, l);
          if (v > best_v) {
            best_v = v;
            best = {i * step, j * step, k * step, l * step};
          }
        }
  // Local refinement around the best grid point.
  const CompassResult refined = compass_maximize(
      [&](const std::vector<double>& x) { return planar_chsh(sigma, {x[0], x[1], x[2], x[3]}); },
      {best[0], best[1], best[2], best[3]}, step / 2.0, 1e-12);
  best = {refined.x[0], refined.x[1], refined.x[2], refined.x[3]};
  const Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d w = svd.matrixV();
  auto dir = [](const Eigen::Matrix3d& frame, double ang) {
    return Eigen::Vector3d(std::cos(ang) * frame.col(0) + std::sin(ang) * frame.col(1));
  };
  ChshOptimum out;
  out.angles = best;
  out.settings = {bloch_observable(dir(u, best[0])), bloch_observable(dir(u, best[1])),
                  bloch_observable(dir(w, best[2])), bloch_observable(dir(w, best[3]))};
  out.value = chsh_value(rho, out.settings);
  return out;
}

ChshEstimate chsh_monte_carlo(const DensityOperator& rho, const ObservableSettings& s, std::size_t trials,
                              RandomSource& rng) {
  if (trials == 0) throw std::invalid_argument("chsh_monte_carlo: trials must be positive");
  require_dichotomic(s);
  const Operator id = Operator::Identity(2, 2);
  auto sample = [&](const Operator& a, const Operator& b, double& var) {
    double p[4];
    const double signs[4] = {1, -1, -1, 1};
    for (int ia = 0; ia < 2; ++ia)
      for (int ib = 0; ib < 2; ++ib) {
        const Operator pa = 0.5 * (id + (ia == 0 ? 1.0 : -1.0) * a);
        const Operator pb = 0.5 * (id + (ib == 0 ? 1.0 : -1.0) * b);
        p[2 * ia + ib] = std::max(0.0, expectation(rho, tensor_product(pa, pb)));
      }
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double v = signs[rng.categorical(p, 4)];
      sum += v;
      sum2 += v * v;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    var = std::max(0.0, sum2 / n - mean * mean);
    return mean;
  };
  ChshEstimate est;
  double v0, v1, v2, v3;
  est.correlators[0] = sample(s.A1, s.B1, v0);
  est.correlators[1] = sample(s.A2, s.B1, v1);
  est.correlators[2] = sample(s.A2, s.B2, v2);
  est.correlators[3] = sample(s.A1, s.B2, v3);
  est.value = est.correlators[0] + est.correlators[1] + est.correlators[2] - est.correlators[3];
  est.std_err = std::sqrt((v0 + v1 + v2 + v3) / static_cast<double>(trials));
  return est;
}

double werner_chsh_crossing(double tol) {
  double lo = 0.5, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (chsh_optimize(werner_state(mid).rho).value > 2.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

double witness_value(const Operator& W, const DensityOperator& rho) {
  if (W.rows() != static_cast<Eigen::Index>(rho.dim())) throw std::invalid_argument("witness_value: dimension mismatch");
  if (!is_hermitian(W)) throw std::invalid_argument("witness_value: witness must be Hermitian");
  return expectation(rho, W);
}

Operator ghz_witness(int n) {
  const Vec g = ghz_state(n).amplitudes();
  const Eigen::Index d = g.size();
  return 0.75 * Operator::Identity(d, d) - g * g.adjoint();
}

}  // namespace chronoq
