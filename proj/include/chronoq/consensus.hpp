// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chronoq/chain.hpp"
#include "chronoq/qcore.hpp"

namespace chronoq {

/// Node j holds qubit j of every candidate block.
struct Node {
  int id = 0;
  bool honest = true;
  /// Operator applied before measuring. Acts on `cheat_qubits`, or on the
  /// node's own qubit when that list is empty. A coalition stores its joint
  /// operator on one member.
  std::optional<Operator> cheat;
  std::vector<int> cheat_qubits;
};

class Network {
 public:
  /// n honest nodes, each starting from the genesis chain "00".
  Network(std::size_t n, std::uint64_t seed);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  Node& node(std::size_t i) { return nodes_.at(i); }
  const std::vector<QuantumChain>& local_chains() const { return chains_; }
  QuantumChain& local_chain(std::size_t i) { return chains_.at(i); }
  RandomSource& rng() { return rng_; }

  /// Marks a node dishonest with a single-qubit cheat.
  void set_cheat(std::size_t node, Operator u);
  /// Marks a coalition dishonest with a joint operator over their qubits.
  void set_coalition_cheat(const std::vector<int>& members, Operator u);
  void clear_cheats();
  /// Draws the verifier uniformly over nodes.
  int select_verifier();

 private:
  std::vector<Node> nodes_;
  std::vector<QuantumChain> chains_;
  RandomSource rng_;
};

struct ThetaDraw {
  std::vector<double> angles;
  int multiple = 0;  // sum of angles / pi
};

/// n-1 uniform draws on [0, pi); the last closes the sum to a multiple of pi.
ThetaDraw sample_theta_angles(std::size_t n, RandomSource& rng);
/// Validates angles in [0, pi) summing to an integer multiple of pi.
ThetaDraw theta_draw_from(const std::vector<double>& angles);

/// {|+_theta>, |-_theta>} with |+-_theta> = (|0> +- e^{i theta}|1>)/sqrt2.
Basis theta_basis(double theta);
/// Measures one qubit in the theta basis and removes it; Y=0 for +_theta.
QubitOutcome theta_measure(const StateVector& state, int qubit, double theta, RandomSource& rng);

struct RoundResult {
  int verifier = 0;
  std::vector<double> angles;
  int multiple = 0;
  std::vector<int> outcomes;
  bool pass = false;
};

/// Applies every cheat operator of the network to a pure candidate.
StateVector apply_cheats(const Network& net, const StateVector& candidate);
DensityOperator apply_cheats(const Network& net, const DensityOperator& candidate);

/// One verification round on a fresh copy of the candidate.
RoundResult run_round(Network& net, const StateVector& candidate, RandomSource& rng);
RoundResult run_round(Network& net, const DensityOperator& candidate, RandomSource& rng);
/// Round with fixed angles and verifier (no sampling of either).
RoundResult run_round_with(const Network& net, const StateVector& candidate, const ThetaDraw& draw, int verifier,
                           RandomSource& rng);

/// Exact joint distribution of Y over all 2^n outcomes (index = Y bits,
/// big-endian), for the candidate after cheats.
std::vector<double> theta_outcome_distribution(const DensityOperator& rho, const std::vector<double>& angles);
/// Exact pass probability for fixed angles: (1 + (-1)^m <X_theta1 ... X_thetan>)/2.
double theta_pass_probability(const DensityOperator& rho, const ThetaDraw& draw);

struct PassEstimate {
  double p = 0.0;
  double std_err = 0.0;
  std::size_t rounds = 0;
  std::size_t passes = 0;
};
PassEstimate estimate_pass_probability(const DensityOperator& rho, Network& net, std::size_t rounds,
                                       RandomSource& rng);

/// <GHZ_n| rho |GHZ_n>.
double ghz_fidelity(const DensityOperator& rho);

inline constexpr double kDishonestSlack = 0.02;

struct MaxFidelity {
  double value = 0.0;
  Operator unitary;  // acting on the dishonest qubits
};
/// Lower bound on max_U F((I_k x U) rho (I_k x U)^dag) by multi-start
/// compass search. Joint unitaries for up to two dishonest qubits, product
/// local unitaries beyond that. `seeds` are extra starting unitaries.
MaxFidelity corrected_fidelity(const DensityOperator& rho, std::size_t honest_count,
                               const std::vector<Operator>& seeds, RandomSource& rng);

struct CheatCase {
  double pass = 0.0;
  double std_err = 0.0;
  bool ok = false;
};

struct FidelityBoundsReport {
  std::size_t n = 0;
  std::size_t honest_count = 0;
  std::size_t rounds = 0;
  double pass_rate = 0.0;  // honest pass rate
  double pass_std_err = 0.0;
  double fidelity = 0.0;
  bool honest_bound_ok = false;
  double corrected_fidelity = 0.0;
  std::vector<CheatCase> cheats;
  bool dishonest_bound_ok = true;
  /// {"n","rounds","pass_rate","fidelity","honest_bound_ok","dishonest_bound_ok"}.
  std::string to_json() const;
};

/// Honest bound F >= 2P-1 - 3 SE, then `cheat_samples` random local-rotation
/// cheats on the last n-k nodes with 4P-3 <= F' + slack.
FidelityBoundsReport check_fidelity_bounds(const DensityOperator& rho, std::size_t honest_count,
                                           std::size_t cheat_samples, std::size_t rounds, RandomSource& rng);

struct AdmitConfig {
  std::size_t rounds = 100;
  double threshold = 0.99;
  /// Candidate copies the source supplies; must cover every round.
  std::size_t copies = 100;
  Record record{0, 0};
};

struct AdmitResult {
  bool accepted = false;
  int verifier = 0;
  double pass_rate = 0.0;
  std::size_t rounds = 0;
  std::vector<std::string> warnings;
};

/// Verifies the candidate and, on acceptance, extends every honest node's chain.
AdmitResult admit_block(Network& net, const DensityOperator& candidate, const AdmitConfig& config);

}  // namespace chronoq
