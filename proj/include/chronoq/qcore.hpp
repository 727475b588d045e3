// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "chronoq/random.hpp"

namespace chronoq {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;
using Basis = std::vector<Vec>;

inline constexpr double kTolAlg = 1e-9;
inline constexpr double kTolNorm = 1e-9;
/// Norm deviation up to which a degenerate measurement is treated as drift.
inline constexpr double kDriftTol = 1e-6;
inline constexpr int kMaxQubits = 20;

/// Normalised amplitude vector. Qubit registers are big-endian: qubit 0 is the
/// leftmost ket factor and basis index b = sum_i bit_i * 2^(n-1-i).
class StateVector {
 public:
  StateVector();
  /// Validates the norm within kTolNorm.
  explicit StateVector(Vec amplitudes);
  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(const Vec& amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);
  /// Computational basis ket from a bit string, e.g. "010".
  static StateVector from_bits(std::string_view bits);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  /// Number of qubits; throws if dim is not a power of two.
  int num_qubits() const;
  const Vec& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

 private:
  Vec amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityOperator {
 public:
  DensityOperator();
  /// Validates hermiticity, trace and eigenvalue floor within kTolAlg.
  explicit DensityOperator(Operator m);
  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);
  /// Divides a non-zero PSD matrix by its trace (post-selection).
  static DensityOperator from_unnormalized(const Operator& m);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Operator& matrix() const { return m_; }

 private:
  Operator m_;
};

struct MeasurementOutcome {
  std::size_t index = 0;
  double probability = 0.0;
  StateVector post_state;
};

struct MixedMeasurementOutcome {
  std::size_t index = 0;
  double probability = 0.0;
  DensityOperator post_state;
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string to_string(BellLabel label);
BellLabel parse_bell_label(std::string_view text);

// Equality and overlaps.
cplx inner(const StateVector& a, const StateVector& b);
double overlap_sq(const StateVector& a, const StateVector& b);
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kTolAlg);
bool equal_exact(const StateVector& a, const StateVector& b, double tol = kTolAlg);

// Products and adjoints.
StateVector tensor_product(const StateVector& a, const StateVector& b);
Operator tensor_product(const Operator& a, const Operator& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);
Operator adjoint(const Operator& m);

/// Named gates: I, X, Y, Z, H, S, T, CNOT, Rx, Ry, Rz. Rotations take an angle,
/// R_a(theta) = exp(-i theta sigma_a / 2).
Operator standard_gate(std::string_view name, std::optional<double> angle = std::nullopt);
Operator pauli(char axis);

StateVector bell_state(BellLabel label);
StateVector ghz_state(int n);

// Predicates.
bool is_unitary(const Operator& m, double tol = kTolAlg);
bool is_hermitian(const Operator& m, double tol = kTolAlg);
bool is_psd(const Operator& m, double tol = kTolAlg);
/// Ascending eigenvalues of (M + M^dagger) / 2.
Eigen::VectorXd hermitian_eigenvalues(const Operator& m);

// Bases and measurement.
Basis computational_basis(std::size_t dim);
/// Throws std::invalid_argument unless basis is complete and orthonormal.
void require_orthonormal_basis(const Basis& basis, std::size_t dim);
std::vector<double> born_distribution(const StateVector& state, const Basis& basis);
std::vector<double> born_distribution(const DensityOperator& rho, const Basis& basis);
MeasurementOutcome measure(const StateVector& state, const Basis& basis, RandomSource& rng);
MixedMeasurementOutcome measure(const DensityOperator& rho, const Basis& basis, RandomSource& rng);

// Register-level helpers.
/// Full-register operator for a k-qubit gate acting on the listed qubits.
Operator embed(const Operator& gate, const std::vector<int>& targets, int num_qubits);
StateVector apply_gate(const StateVector& state, const Operator& gate, const std::vector<int>& targets);
/// Applies an operator without renormalising; used for projections.
Vec apply_operator(const Vec& amps, const Operator& gate, const std::vector<int>& targets, int num_qubits);

struct QubitOutcome {
  int outcome = 0;
  double probability = 0.0;
  /// Remaining register with the measured qubit removed.
  StateVector remaining;
};

/// Outcome probabilities for one qubit measured in a two-vector basis.
std::vector<double> qubit_probabilities(const StateVector& state, int qubit, const Basis& qubit_basis);
/// Measures one qubit and removes it from the register.
QubitOutcome measure_and_remove(const StateVector& state, int qubit, const Basis& qubit_basis,
                                RandomSource& rng);
/// Deterministic branch: projects qubit onto basis vector `outcome` and removes it.
QubitOutcome project_and_remove(const StateVector& state, int qubit, const Basis& qubit_basis, int outcome);

// Density-operator calculus.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& keep);
double purity(const DensityOperator& rho);
/// Expectation tr(rho O), real part.
double expectation(const DensityOperator& rho, const Operator& observable);
DensityOperator apply_unitary(const DensityOperator& rho, const Operator& u);

// Random objects.
StateVector random_state(std::size_t dim, RandomSource& rng);
/// Haar unitary from the QR decomposition of a complex Ginibre matrix.
Operator random_unitary(std::size_t dim, RandomSource& rng);
/// Hilbert-Schmidt random density operator of the given rank (0 = full).
DensityOperator random_density(std::size_t dim, RandomSource& rng, std::size_t rank = 0);

/// Best least-squares unitary U with U|a,0> ~ |a,a> and U|b,0> ~ |b,b>
/// (orthogonal Procrustes), with the fidelities it achieves.
struct CloningFit {
  Operator unitary;
  double fidelity_a = 0.0;
  double fidelity_b = 0.0;
};
CloningFit fit_cloner(const StateVector& a, const StateVector& b);

}  // namespace chronoq
