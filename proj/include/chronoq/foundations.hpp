// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "chronoq/entangle.hpp"
#include "chronoq/qcore.hpp"

namespace chronoq {

// ------------------------------------------------------------------ Gleason

inline constexpr double kTolRecon = 1e-8;
/// Most negative eigenvalue that PSD repair will clamp.
inline constexpr double kPsdRepairTol = 1e-3;

/// Probability assignment to unit vectors, stored as a table. Lookups match
/// vectors up to a global phase.
class Valuation {
 public:
  explicit Valuation(std::size_t dim) : dim_(dim) {}

  /// Tabulates v(n) = <n|rho|n> on the 2d^2 - d vectors the reconstruction needs.
  static Valuation from_density(const DensityOperator& rho, const Basis& frame);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  void set(const Vec& n, double value);
  /// Throws std::out_of_range when the vector is not tabulated.
  double value(const Vec& n) const;
  bool contains(const Vec& n) const;
  /// Orthonormal frames registered with this valuation.
  const std::vector<Basis>& frames() const { return frames_; }
  void add_frame(const Basis& frame);
  /// Largest |sum_i v(n_i) - 1| over registered frames.
  double frame_defect() const;
  /// Copy with every entry shifted by an independent uniform draw in [-eps, eps].
  Valuation perturbed(double eps, RandomSource& rng) const;

 private:
  std::size_t dim_;
  std::vector<std::pair<Vec, double>> entries_;
  std::vector<Basis> frames_;
};

/// The probe vectors (n_j +- n_k)/sqrt2 and (n_j +- i n_k)/sqrt2 for j < k.
std::vector<Vec> gleason_probe_vectors(const Basis& frame);

struct GleasonResult {
  DensityOperator rho;
  bool repaired = false;
  double min_eigenvalue = 0.0;  // before repair
};
/// rho_jj = v(n_j);
/// rho_jk = 1/2 [v(n_j+n_k) - v(n_j-n_k)] - i/2 [v(n_j+i n_k) - v(n_j-i n_k)].
/// Negative eigenvalues down to -kPsdRepairTol are clamped to 0.
GleasonResult gleason_reconstruct(const Valuation& val, const Basis& frame);
/// Qubit form (v(x)+v(y))/2 I + (v(x)-v(y))/2 Z + a/2 X + b/2 Y in the frame,
/// a = v(x+y) - v(x-y), b = v(x+iy) - v(x-iy).
DensityOperator gleason_qubit_pauli(const Valuation& val, const Basis& frame);

/// rho_P = sum_i <n_i|rho|n_i> |n_i><n_i|.
DensityOperator gleason_decohere(const DensityOperator& rho, const Basis& frame);
/// Columns of a Haar-random unitary.
Basis haar_frame(std::size_t dim, RandomSource& rng);
/// (d+1) <rho_P> - I over `samples` Haar frames.
Operator frame_average_reconstruction(const DensityOperator& rho, std::size_t samples, RandomSource& rng);

// -------------------------------------------------------------- Leggett-Garg

/// Qubit precessing at rate omega about `axis`, measured projectively.
struct PrecessionModel {
  double omega = 1.0;
  StateVector initial = StateVector::basis(2, 0);
  Operator observable = pauli('Z');
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();

  Operator evolution(double t) const;
};
void require_dichotomic_observable(const Operator& q);

/// Joint distribution of outcomes (+1 -> index 0) for projective
/// measurements of `observables[m]` at `times[m]`, by branch enumeration.
/// Index is big-endian over measurements.
std::vector<double> sequential_distribution(const PrecessionModel& model, const std::vector<double>& times,
                                            const std::vector<Operator>& observables);
/// <Q(t_j) Q(t_i)> from a run that measures only at t_i and t_j.
double two_time_correlator(const PrecessionModel& model, double ti, double tj);
double two_time_correlator(const PrecessionModel& model, double ti, const Operator& a, double tj, const Operator& b);

/// K3 = C21 + C32 - C31 at times 0, tau, 2 tau.
double lg_k3(const PrecessionModel& model, double tau);
/// 2 cos(omega tau) - cos(2 omega tau); valid for the default model.
double lg_k3_analytic(double omega, double tau);
struct K3Max {
  double k3_max = 0.0;
  double tau_star = 0.0;
};
/// Grid over one precession period, then Brent refinement.
K3Max lg_k3_max(const PrecessionModel& model, std::size_t grid = 2000);

/// K3 from a classical joint distribution over (Q1, Q2, Q3), index bit 0 = +1.
double k3_from_joint(const std::array<double, 8>& p);
std::array<double, 8> random_classical_joint(RandomSource& rng);
/// Markov chain: Q1 = +1 with probability p1, then flips with f12 and f23.
std::array<double, 8> markov_joint(double p1, double f12, double f23);

/// A1 B1 + A2 B1 + A2 B2 - A1 B2 with A_i measured at t1 and B_j at t2.
double temporal_chsh(const PrecessionModel& model, const ObservableSettings& s, double t1, double t2);
struct TemporalChshOptimum {
  double value = 0.0;
  ObservableSettings settings;
};
/// Multi-start compass search over four Bloch directions.
TemporalChshOptimum temporal_chsh_optimize(const PrecessionModel& model, double t1, double t2, RandomSource& rng);

struct EntropicLgResult {
  double lhs = 0.0;  // H(Q3|Q1)
  double rhs = 0.0;  // H(Q3|Q2) + H(Q2|Q1)
  bool violated = false;
  double margin() const { return lhs - rhs; }
};
/// Pairwise distributions from two-time runs; requires t1 <= t2 <= t3.
EntropicLgResult entropic_lg_check(const PrecessionModel& model, double t1, double t2, double t3);
/// Same inequality on a classical joint distribution.
EntropicLgResult entropic_lg_check(const std::array<double, 8>& p);
struct EntropicScan {
  double best_margin = 0.0;
  double tau_star = 0.0;
  bool violation_found = false;
};
/// Equal spacing t = 0, tau, 2 tau over a grid of tau in (0, pi / omega].
EntropicScan entropic_lg_scan(const PrecessionModel& model, std::size_t grid = 2000);

}  // namespace chronoq
