// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/foundations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <Eigen/Eigenvalues>

#include "chronoq/infotheory.hpp"
#include "chronoq/optimize.hpp"

namespace chronoq {

// ------------------------------------------------------------------ Gleason

namespace {

bool same_ray(const Vec& a, const Vec& b) {
  return a.size() == b.size() && std::norm(a.dot(b)) >= 1.0 - 1e-12;
}

Vec unit(const Vec& n) {
  const double nn = n.norm();
  if (nn == 0.0) throw std::invalid_argument("valuation: zero vector");
  return n / nn;
}

Operator frame_matrix(const Basis& frame) {
  const auto d = static_cast<Eigen::Index>(frame.size());
  Operator n(d, d);
  for (Eigen::Index j = 0; j < d; ++j) n.col(j) = frame[static_cast<std::size_t>(j)];
  return n;
}

}  // namespace

void Valuation::set(const Vec& n, double value) {
  if (static_cast<std::size_t>(n.size()) != dim_) throw std::invalid_argument("valuation: dimension mismatch");
  const Vec u = unit(n);
  for (auto& e : entries_)
    if (same_ray(e.first, u)) {
      e.second = value;
      return;
    }
  entries_.emplace_back(u, value);
}

bool Valuation::contains(const Vec& n) const {
  if (static_cast<std::size_t>(n.size()) != dim_) return false;
  const Vec u = unit(n);
  for (const auto& e : entries_)
    if (same_ray(e.first, u)) return true;
  return false;
}

double Valuation::value(const Vec& n) const {
  const Vec u = unit(n);
  for (const auto& e : entries_)
    if (same_ray(e.first, u)) return e.second;
  throw std::out_of_range("valuation: vector not tabulated");
}

void Valuation::add_frame(const Basis& frame) {
  require_orthonormal_basis(frame, dim_);
  frames_.push_back(frame);
}

double Valuation::frame_defect() const {
  double worst = 0.0;
  for (const auto& f : frames_) {
    double s = 0.0;
    for (const auto& n : f) s += value(n);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

Valuation Valuation::perturbed(double eps, RandomSource& rng) const {
  Valuation v = *this;
  for (auto& e : v.entries_) e.second += rng.uniform(-eps, eps);
  return v;
}

std::vector<Vec> gleason_probe_vectors(const Basis& frame) {
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  std::vector<Vec> out;
  for (std::size_t j = 0; j < frame.size(); ++j)
    for (std::size_t k = j + 1; k < frame.size(); ++k) {
      out.push_back(r * (frame[j] + frame[k]));
      out.push_back(r * (frame[j] - frame[k]));
      out.push_back(r * (frame[j] + i * frame[k]));
      out.push_back(r * (frame[j] - i * frame[k]));
    }
  return out;
}

Valuation Valuation::from_density(const DensityOperator& rho, const Basis& frame) {
  Valuation v(rho.dim());
  v.add_frame(frame);
  auto born = [&](const Vec& n) { return (n.adjoint() * rho.matrix() * n)(0, 0).real(); };
  for (const auto& n : frame) v.set(n, born(n));
  for (const auto& n : gleason_probe_vectors(frame)) v.set(n, born(n));
  return v;
}

GleasonResult gleason_reconstruct(const Valuation& val, const Basis& frame) {
  const std::size_t d = val.dim();
  require_orthonormal_basis(frame, d);
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  Operator m = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    m(jj, jj) = val.value(frame[j]);
    for (std::size_t k = j + 1; k < d; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      const double re = val.value(r * (frame[j] + frame[k])) - val.value(r * (frame[j] - frame[k]));
      const double im = val.value(r * (frame[j] + i * frame[k])) - val.value(r * (frame[j] - i * frame[k]));
      m(jj, kk) = 0.5 * re - 0.5 * i * im;
      m(kk, jj) = std::conj(m(jj, kk));
    }
  }
  const Operator n = frame_matrix(frame);
  Operator rho = n * m * n.adjoint();
  rho = 0.5 * (rho + rho.adjoint());

  Eigen::SelfAdjointEigenSolver<Operator> es(rho);
  GleasonResult out;
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  const double trace = rho.trace().real();
  if (out.min_eigenvalue < -kPsdRepairTol) {
    throw std::runtime_error("gleason_reconstruct: eigenvalue " + std::to_string(out.min_eigenvalue) +
                             " is beyond repair");
  }
  if (out.min_eigenvalue >= -kTolAlg && std::abs(trace - 1.0) <= kTolAlg) {
    out.rho = DensityOperator(rho);
    return out;
  }
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  if (ev.sum() <= 0.0) throw std::runtime_error("gleason_reconstruct: nothing left after repair");
  out.repaired = true;
  out.rho = DensityOperator::from_unnormalized(es.eigenvectors() * ev.cast<cplx>().asDiagonal() *
                                               es.eigenvectors().adjoint());
  return out;
}

DensityOperator gleason_qubit_pauli(const Valuation& val, const Basis& frame) {
  if (val.dim() != 2) throw std::invalid_argument("gleason_qubit_pauli: qubit valuation expected");
  require_orthonormal_basis(frame, 2);
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  const Vec& x = frame[0];
  const Vec& y = frame[1];
  const double vx = val.value(x), vy = val.value(y);
  const double a = val.value(r * (x + y)) - val.value(r * (x - y));
  const double b = val.value(r * (x + i * y)) - val.value(r * (x - i * y));
  const Operator m = 0.5 * (vx + vy) * Operator::Identity(2, 2) + 0.5 * (vx - vy) * pauli('Z') + 0.5 * a * pauli('X') +
                     0.5 * b * pauli('Y');
  const Operator n = frame_matrix(frame);
  return DensityOperator(n * m * n.adjoint());
}

DensityOperator gleason_decohere(const DensityOperator& rho, const Basis& frame) {
  require_orthonormal_basis(frame, rho.dim());
  Operator out = Operator::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& n : frame) {
    const double v = (n.adjoint() * rho.matrix() * n)(0, 0).real();
    out += v * n * n.adjoint();
  }
  return DensityOperator(out);
}

Basis haar_frame(std::size_t dim, RandomSource& rng) {
  const Operator u = random_unitary(dim, rng);
  Basis b;
  for (Eigen::Index j = 0; j < u.cols(); ++j) b.push_back(u.col(j));
  return b;
}

Operator frame_average_reconstruction(const DensityOperator& rho, std::size_t samples, RandomSource& rng) {
  if (samples < 1) throw std::invalid_argument("frame_average_reconstruction: samples must be positive");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Operator acc = Operator::Zero(d, d);
  for (std::size_t s = 0; s < samples; ++s) acc += gleason_decohere(rho, haar_frame(rho.dim(), rng)).matrix();
  acc /= static_cast<double>(samples);
  return static_cast<double>(d + 1) * acc - Operator::Identity(d, d);
}

// -------------------------------------------------------------- Leggett-Garg

Operator PrecessionModel::evolution(double t) const {
  const Eigen::Vector3d n = axis.normalized();
  const Operator ns = n(0) * pauli('X') + n(1) * pauli('Y') + n(2) * pauli('Z');
  const double half = 0.5 * omega * t;
  return std::cos(half) * Operator::Identity(2, 2) - cplx(0.0, std::sin(half)) * ns;
}

void require_dichotomic_observable(const Operator& q) {
  if (q.rows() != 2 || q.cols() != 2) throw std::invalid_argument("observable must act on one qubit");
  if (!is_hermitian(q) || !(q * q).isApprox(Operator::Identity(2, 2), 1e-9)) {
    throw std::invalid_argument("observable must be Hermitian with square identity");
  }
}

std::vector<double> sequential_distribution(const PrecessionModel& model, const std::vector<double>& times,
                                            const std::vector<Operator>& observables) {
  if (times.size() != observables.size() || times.empty()) {
    throw std::invalid_argument("sequential_distribution: one observable per time");
  }
  const Operator id = Operator::Identity(2, 2);
  std::vector<Vec> branches{model.initial.amplitudes()};
  double prev = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (times[m] < prev) throw std::invalid_argument("sequential_distribution: times must be non-decreasing");
    require_dichotomic_observable(observables[m]);
    const Operator u = model.evolution(times[m] - prev);
    const Operator proj[2] = {0.5 * (id + observables[m]), 0.5 * (id - observables[m])};
    std::vector<Vec> next;
    next.reserve(branches.size() * 2);
    for (const auto& b : branches) {
      const Vec evolved = u * b;
      next.push_back(proj[0] * evolved);
      next.push_back(proj[1] * evolved);
    }
    branches = std::move(next);
    prev = times[m];
  }
  std::vector<double> p(branches.size());
  for (std::size_t i = 0; i < branches.size(); ++i) p[i] = branches[i].squaredNorm();
  return p;
}

double two_time_correlator(const PrecessionModel& model, double ti, const Operator& a, double tj, const Operator& b) {
  const std::vector<double> p = sequential_distribution(model, {ti, tj}, {a, b});
  return p[0] - p[1] - p[2] + p[3];
}

double two_time_correlator(const PrecessionModel& model, double ti, double tj) {
  return two_time_correlator(model, ti, model.observable, tj, model.observable);
}

double lg_k3(const PrecessionModel& model, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("lg_k3: tau must be positive");
  const double t1 = 0.0, t2 = tau, t3 = 2.0 * tau;
  return two_time_correlator(model, t1, t2) + two_time_correlator(model, t2, t3) - two_time_correlator(model, t1, t3);
}

double lg_k3_analytic(double omega, double tau) { return 2.0 * std::cos(omega * tau) - std::cos(2.0 * omega * tau); }

K3Max lg_k3_max(const PrecessionModel& model, std::size_t grid) {
  if (model.omega <= 0.0) throw std::invalid_argument("lg_k3_max: omega must be positive");
  if (grid < 4) throw std::invalid_argument("lg_k3_max: grid too small");
  const double period = 2.0 * std::numbers::pi / model.omega;
  const double h = period / static_cast<double>(grid);
  K3Max best{-1e300, 0.0};
  for (std::size_t k = 1; k <= grid; ++k) {
    const double tau = h * static_cast<double>(k);
    const double v = lg_k3(model, tau);
    if (v > best.k3_max + 1e-12) best = {v, tau};
  }
  const double lo = std::max(best.tau_star - h, 1e-12);
  const double hi = best.tau_star + h;
  const auto r = boost::math::tools::brent_find_minima([&](double t) { return -lg_k3(model, t); }, lo, hi, 52);
  if (-r.second > best.k3_max) best = {-r.second, r.first};
  return best;
}

double k3_from_joint(const std::array<double, 8>& p) {
  double c21 = 0.0, c32 = 0.0, c31 = 0.0;
  for (int idx = 0; idx < 8; ++idx) {
    const double q1 = (idx & 4) ? -1.0 : 1.0;
    const double q2 = (idx & 2) ? -1.0 : 1.0;
    const double q3 = (idx & 1) ? -1.0 : 1.0;
    c21 += p[static_cast<std::size_t>(idx)] * q1 * q2;
    c32 += p[static_cast<std::size_t>(idx)] * q2 * q3;
    c31 += p[static_cast<std::size_t>(idx)] * q1 * q3;
  }
  return c21 + c32 - c31;
}

std::array<double, 8> random_classical_joint(RandomSource& rng) {
  std::array<double, 8> p{};
  double s = 0.0;
  for (double& x : p) {
    x = -std::log(1.0 - rng.uniform());
    s += x;
  }
  for (double& x : p) x /= s;
  return p;
}

std::array<double, 8> markov_joint(double p1, double f12, double f23) {
  for (double v : {p1, f12, f23})
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("markov_joint: probabilities must lie in [0, 1]");
  std::array<double, 8> p{};
  for (int idx = 0; idx < 8; ++idx) {
    const int b1 = (idx >> 2) & 1, b2 = (idx >> 1) & 1, b3 = idx & 1;
    p[static_cast<std::size_t>(idx)] =
        (b1 ? 1.0 - p1 : p1) * (b1 != b2 ? f12 : 1.0 - f12) * (b2 != b3 ? f23 : 1.0 - f23);
  }
  return p;
}

double temporal_chsh(const PrecessionModel& model, const ObservableSettings& s, double t1, double t2) {
  require_dichotomic(s);
  if (t2 < t1) throw std::invalid_argument("temporal_chsh: t2 precedes t1");
  auto c = [&](const Operator& a, const Operator& b) { return two_time_correlator(model, t1, a, t2, b); };
  return c(s.A1, s.B1) + c(s.A2, s.B1) + c(s.A2, s.B2) - c(s.A1, s.B2);
}

TemporalChshOptimum temporal_chsh_optimize(const PrecessionModel& model, double t1, double t2, RandomSource& rng) {
  auto obs = [](double theta, double phi) {
    return bloch_observable(Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                            std::cos(theta)));
  };
  auto settings_of = [&](const std::vector<double>& x) {
    return ObservableSettings{obs(x[0], x[1]), obs(x[2], x[3]), obs(x[4], x[5]), obs(x[6], x[7])};
  };
  auto f = [&](const std::vector<double>& x) { return temporal_chsh(model, settings_of(x), t1, t2); };
  TemporalChshOptimum best{-1e300, {}};
  for (int start = 0; start < 6; ++start) {
    std::vector<double> x0(8);
    for (double& v : x0) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const CompassResult r = compass_maximize(f, x0, 0.5, 1e-9, 40000);
    if (r.value > best.value) best = {r.value, settings_of(r.x)};
  }
  return best;
}

namespace {

double conditional_entropy(const std::vector<double>& p2x2) {
  Eigen::MatrixXd t(2, 2);
  t << p2x2[0], p2x2[1], p2x2[2], p2x2[3];
  return derived_entropies(JointDist(t)).conditional_y_given_x;
}

}  // namespace

EntropicLgResult entropic_lg_check(const PrecessionModel& model, double t1, double t2, double t3) {
  if (t2 < t1 || t3 < t2) throw std::invalid_argument("entropic_lg_check: times must be ordered");
  const Operator& q = model.observable;
  EntropicLgResult r;
  r.lhs = conditional_entropy(sequential_distribution(model, {t1, t3}, {q, q}));
  r.rhs = conditional_entropy(sequential_distribution(model, {t2, t3}, {q, q})) +
          conditional_entropy(sequential_distribution(model, {t1, t2}, {q, q}));
  r.violated = r.lhs > r.rhs + kTolAlg;
  return r;
}

EntropicLgResult entropic_lg_check(const std::array<double, 8>& p) {
  std::vector<double> p12(4, 0.0), p23(4, 0.0), p13(4, 0.0);
  for (int idx = 0; idx < 8; ++idx) {
    const int b1 = (idx >> 2) & 1, b2 = (idx >> 1) & 1, b3 = idx & 1;
    const double w = p[static_cast<std::size_t>(idx)];
    p12[static_cast<std::size_t>(2 * b1 + b2)] += w;
    p23[static_cast<std::size_t>(2 * b2 + b3)] += w;
    p13[static_cast<std::size_t>(2 * b1 + b3)] += w;
  }
  EntropicLgResult r;
  r.lhs = conditional_entropy(p13);
  r.rhs = conditional_entropy(p23) + conditional_entropy(p12);
  r.violated = r.lhs > r.rhs + kTolAlg;
  return r;
}

EntropicScan entropic_lg_scan(const PrecessionModel& model, std::size_t grid) {
  if (grid < 1) throw std::invalid_argument("entropic_lg_scan: grid must be positive");
  const double span = std::numbers::pi / model.omega;
  EntropicScan s{-1e300, 0.0, false};
  for (std::size_t k = 1; k <= grid; ++k) {
    const double tau = span * static_cast<double>(k) / static_cast<double>(grid);
    const EntropicLgResult r = entropic_lg_check(model, 0.0, tau, 2.0 * tau);
    if (r.margin() > s.best_margin) {
      s.best_margin = r.margin();
      s.tau_star = tau;
    }
    s.violation_found = s.violation_found || r.violated;
  }
  return s;
}

}  // namespace chronoq
