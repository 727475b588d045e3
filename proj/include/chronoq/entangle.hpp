// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "chronoq/qcore.hpp"

namespace chronoq {

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, positive
  Basis left_basis;
  Basis right_basis;
  std::size_t rank() const;
};

/// Schmidt form of a bipartite pure state with factor dims {dA, dB}.
SchmidtDecomposition schmidt(const StateVector& state, const std::vector<std::size_t>& dims);

struct WernerState {
  double F = 0.0;
  DensityOperator rho;
};
/// F |Psi-><Psi-| + (1-F)/3 (|Psi+><Psi+| + |Phi+><Phi+| + |Phi-><Phi-|).
WernerState werner_state(double F);

enum class TransposeSide { A, B };
Operator partial_transpose(const DensityOperator& rho, const std::vector<std::size_t>& dims, TransposeSide side);
double ppt_min_eigenvalue(const DensityOperator& rho, const std::vector<std::size_t>& dims,
                          TransposeSide side = TransposeSide::B);

/// sqrt(2 (1 - tr rho_A^2)) for a pure bipartite state.
double concurrence(const StateVector& state, const std::vector<std::size_t>& dims);

/// Principal square root of a PSD matrix with eigenvalues clamped at 0.
Operator psd_sqrt(const Operator& m);

struct StateDistance {
  double fidelity = 0.0;        // (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
  double trace_distance = 0.0;  // tr|rho - sigma| / 2
};
StateDistance state_distance(const DensityOperator& rho, const DensityOperator& sigma);

struct ObservableSettings {
  Operator A1, A2, B1, B2;
};
/// Throws unless every setting is Hermitian and squares to the identity.
void require_dichotomic(const ObservableSettings& s);
/// A1 = Z, A2 = X, B1 = (-Z - X)/sqrt2, B2 = (Z - X)/sqrt2.
ObservableSettings reference_chsh_settings();
/// Dichotomic qubit observable n . sigma for a real unit 3-vector.
Operator bloch_observable(const Eigen::Vector3d& n);

/// <A1B1> + <A2B1> + <A2B2> - <A1B2>.
double chsh_value(const DensityOperator& rho, const ObservableSettings& s);

/// Real correlation tensor T_ij = tr(rho sigma_i (x) sigma_j).
Eigen::Matrix3d correlation_tensor(const DensityOperator& rho);

struct ChshOptimum {
  double value = 0.0;
  ObservableSettings settings;
  std::array<double, 4> angles{};  // a1, a2, b1, b2 in the principal planes
};
/// Deterministic grid (24 angles per axis) plus compass refinement over a
/// four-angle family of settings in the principal planes of T.
ChshOptimum chsh_optimize(const DensityOperator& rho);

struct ChshEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::array<double, 4> correlators{};  // A1B1, A2B1, A2B2, A1B2
};
/// Sampled joint outcomes, `trials` per correlator.
ChshEstimate chsh_monte_carlo(const DensityOperator& rho, const ObservableSettings& s, std::size_t trials,
                              RandomSource& rng);

/// Werner fidelity where the optimised CHSH value crosses 2, found by bisection.
double werner_chsh_crossing(double tol = 1e-7);

double witness_value(const Operator& W, const DensityOperator& rho);
/// (3/4) I - |GHZ_n><GHZ_n|.
Operator ghz_witness(int n);

}  // namespace chronoq
