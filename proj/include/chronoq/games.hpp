// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "chronoq/qcore.hpp"

namespace chronoq {

using Fraction = boost::rational<long long>;

/// Parses "3/11", "0.25" or "1" exactly.
Fraction parse_fraction(std::string_view text);
double to_double(const Fraction& f);
std::string to_string(const Fraction& f);

enum class Strategy { Stick, Switch };
std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

/// Exact probability-tree result. `win` is conditional on `condition`
/// (the condition is the whole space when the game is unconditioned).
struct TreeValue {
  Fraction win{0};
  Fraction condition{1};
  Fraction joint{0};
  Fraction leaf_total{0};  // must equal 1
};

struct GameStats {
  std::string game;
  std::string strategy;
  std::size_t trials = 0;    // games played
  std::size_t kept = 0;      // games meeting the condition
  std::size_t wins = 0;      // wins among kept games
  double empirical = 0.0;    // wins / kept
  double analytic = 0.0;
  std::string analytic_exact;  // fraction text when rational, empty otherwise
  double std_err = 0.0;
  double condition_empirical = 1.0;
  double condition_analytic = 1.0;
  bool pass() const;
  std::string to_json() const;
};

// Classical Monty Hall, three doors.
TreeValue monty_classic_tree(Strategy s);
GameStats monty_classic(Strategy s, std::size_t trials, RandomSource& rng);

// Ignorant Monty: conditioned on a goat door being opened.
TreeValue monty_ignorant_tree(Strategy s);
/// Probability that Monty opens the prize door.
Fraction monty_ignorant_accident();
GameStats monty_ignorant(Strategy s, std::size_t trials, RandomSource& rng);

// Teleportation.
struct TeleportResult {
  int a = 0;  // Alice's outcome bits
  int b = 0;
  double fidelity = 0.0;
  StateVector bob_state;
  DensityOperator bob_premeasure_reduced;
};
/// Standard protocol on the shared pair |beta_00>.
TeleportResult teleport_standard(const StateVector& psi, RandomSource& rng);
/// Same protocol with Alice's outcome forced to ab.
TeleportResult teleport_branch(const StateVector& psi, int a, int b);

/// Bob's correction for Alice's outcome door `ab` when the pair is beta_xy.
/// Doors are encoded as 2a + b.
Operator teleport_correction(int bell_door, int outcome_door);

TreeValue monty_teleport_tree(Strategy s, int contestant_door = 0);
/// Full quantum simulation: beta_xy pair, CNOT + H, Alice's measurement,
/// goat door not in {xy, ab}, and Bob's correction.
GameStats monty_teleport(Strategy s, std::size_t trials, RandomSource& rng, int contestant_door = 0);

/// One of Alice's two bits is lost, each with probability 1/2; pair beta_00.
/// Conditioned on Bob receiving bit 0.
TreeValue unreliable_teleport_tree(Strategy s);
GameStats unreliable_teleport(Strategy s, std::size_t trials, RandomSource& rng);

/// Encodes two bits on |Phi+>, decodes with CNOT + H and a Z measurement.
std::string superdense_roundtrip(const std::string& bits, RandomSource& rng);

// CHSH game.
enum class ChshPlayers { Classical, Quantum };
std::string to_string(ChshPlayers p);
/// Classical players answer a = b = 0; quantum players share |Psi->.
double chsh_game_analytic(ChshPlayers p);
GameStats chsh_game(ChshPlayers p, std::size_t trials, RandomSource& rng);
/// Best deterministic classical win probability, by enumerating all 16 strategies.
Fraction chsh_classical_optimum();

// PBR game on four doors.
struct Ontology {
  bool epistemic = false;
  Fraction q1{0}, q2{0}, q3{0};
  static Ontology ontic();
  /// Epistemic with the default split q1 = q2 = q3 = q/3.
  static Ontology epistemic_q(const Fraction& q);
  static Ontology epistemic_split(const Fraction& q1, const Fraction& q2, const Fraction& q3);
  Fraction q() const { return q1 + q2 + q3; }
  /// Prize-door distribution over doors 1..4.
  std::array<Fraction, 4> prize_distribution() const;
};
TreeValue pbr_tree(const Ontology& o, Strategy s);
/// Closed forms 3/(11-8q) and (4-4q)/(11-8q).
Fraction pbr_closed_form(const Fraction& q, Strategy s);
GameStats pbr_game(const Ontology& o, Strategy s, std::size_t trials, RandomSource& rng);

// Key distribution.
enum class QkdProtocol { BB84, E91 };
enum class Eavesdropper { None, InterceptResend };
std::string to_string(QkdProtocol p);
std::string to_string(Eavesdropper e);
struct QkdResult {
  std::string alice_key;
  std::string bob_key;
  std::size_t rounds = 0;  // transmitted pairs or qubits before sifting
  double qber = 0.0;
  std::string to_json() const;
};
/// Runs until `key_bits` sifted bits exist.
QkdResult qkd_session(QkdProtocol p, std::size_t key_bits, Eavesdropper eve, RandomSource& rng);

}  // namespace chronoq
