// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "chronoq/games.hpp"

namespace chronoq {
namespace {

// Conditional win probability from a weighted list of leaves.
struct Tally {
  Fraction win{0}, cond{0};
  void add(const Fraction& w, bool in_condition, bool won) {
    if (!in_condition) return;
    cond += w;
    if (won) win += w;
  }
  Fraction value() const { return win / cond; }
};

std::vector<int> doors_except(int n, std::initializer_list<int> skip) {
  std::vector<int> out;
  for (int d = 0; d < n; ++d)
    if (std::find(skip.begin(), skip.end(), d) == skip.end()) out.push_back(d);
  return out;
}

// Three-door game. `host` lists the doors the host may open given prize and pick.
Fraction three_door(bool switching, const std::function<std::vector<int>(int, int)>& host, bool condition_on_goat) {
  Tally t;
  for (int prize = 0; prize < 3; ++prize)
    for (int pick = 0; pick < 3; ++pick) {
      const auto opens = host(prize, pick);
      for (int open : opens) {
        const Fraction w = Fraction(1, 9) / Fraction(static_cast<long long>(opens.size()));
        const int final_door = switching ? doors_except(3, {pick, open}).front() : pick;
        t.add(w, !condition_on_goat || open != prize, final_door == prize);
      }
    }
  return t.value();
}

TEST(Fractions, ParseForms) {
  EXPECT_EQ(parse_fraction("3/11"), Fraction(3, 11));
  EXPECT_EQ(parse_fraction("0.25"), Fraction(1, 4));
  EXPECT_EQ(parse_fraction("2"), Fraction(2));
  EXPECT_THROW(parse_fraction("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_fraction("abc"), std::invalid_argument);
  EXPECT_EQ(to_string(Fraction(6, 8)), "3/4");
}

TEST(Monty, ClassicMatchesEnumeration) {
  auto informed = [](int prize, int pick) { return doors_except(3, {prize, pick}); };
  EXPECT_EQ(monty_classic_tree(Strategy::Switch).win, three_door(true, informed, false));
  EXPECT_EQ(monty_classic_tree(Strategy::Stick).win, three_door(false, informed, false));
  EXPECT_EQ(monty_classic_tree(Strategy::Switch).win, Fraction(2, 3));
  EXPECT_EQ(monty_classic_tree(Strategy::Switch).leaf_total, Fraction(1));
}

TEST(Monty, IgnorantMatchesEnumeration) {
  auto ignorant = [](int, int pick) { return doors_except(3, {pick}); };
  EXPECT_EQ(monty_ignorant_tree(Strategy::Switch).win, three_door(true, ignorant, true));
  EXPECT_EQ(monty_ignorant_tree(Strategy::Stick).win, three_door(false, ignorant, true));
  EXPECT_EQ(monty_ignorant_tree(Strategy::Switch).win, Fraction(1, 2));
  EXPECT_EQ(monty_ignorant_accident(), Fraction(1, 3));
}

TEST(Monty, SimulationsWithinThreeSigma) {
  RandomSource rng(71);
  for (Strategy s : {Strategy::Stick, Strategy::Switch}) {
    EXPECT_TRUE(monty_classic(s, 20000, rng).pass());
    const GameStats ig = monty_ignorant(s, 20000, rng);
    EXPECT_TRUE(ig.pass());
    EXPECT_NEAR(1.0 - ig.condition_empirical, 1.0 / 3.0, 0.02);
  }
}

TEST(Teleport, EveryBranchRestoresInput) {
  RandomSource rng(72);
  const Operator half = 0.5 * Operator::Identity(2, 2);
  for (int i = 0; i < 100; ++i) {
    const StateVector psi = random_state(2, rng);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const TeleportResult r = teleport_branch(psi, a, b);
        EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
        EXPECT_LT((r.bob_premeasure_reduced.matrix() - half).cwiseAbs().maxCoeff(), 1e-12);
      }
  }
}

TEST(Teleport, CorrectionsAreUnitaryAndDistinct) {
  for (int xy = 0; xy < 4; ++xy)
    for (int ab = 0; ab < 4; ++ab) {
      const Operator c = teleport_correction(xy, ab);
      EXPECT_TRUE(is_unitary(c));
      for (int other = 0; other < ab; ++other) {
        const cplx ov = (teleport_correction(xy, other).adjoint() * c).trace() / 2.0;
        EXPECT_LT(std::abs(ov), 1.0 - 1e-6);
      }
    }
}

TEST(Teleport, MontyTreeIndependentOfDoor) {
  for (int xy = 0; xy < 4; ++xy) {
    EXPECT_EQ(monty_teleport_tree(Strategy::Stick, xy).win, Fraction(2, 8));
    EXPECT_EQ(monty_teleport_tree(Strategy::Switch, xy).win, Fraction(3, 8));
  }
}

TEST(Teleport, MontyTreeMatchesEnumeration) {
  // Four doors: Alice's outcome is uniform, the goat door avoids xy and ab,
  // and a switch goes uniformly to one of the two remaining doors.
  for (bool switching : {false, true}) {
    Tally t;
    for (int ab = 0; ab < 4; ++ab)
      for (int cd : doors_except(4, {0, ab})) {
        const Fraction w = Fraction(1, 4) / Fraction(static_cast<long long>(doors_except(4, {0, ab}).size()));
        if (!switching) {
          t.add(w, true, ab == 0);
          continue;
        }
        for (int ef : doors_except(4, {0, cd})) t.add(w / Fraction(2), true, ef == ab);
      }
    EXPECT_EQ(monty_teleport_tree(switching ? Strategy::Switch : Strategy::Stick).win, t.value());
  }
}

TEST(Teleport, MontySimulationEveryDoor) {
  RandomSource rng(73);
  for (int xy = 0; xy < 4; ++xy)
    for (Strategy s : {Strategy::Stick, Strategy::Switch}) EXPECT_TRUE(monty_teleport(s, 8000, rng, xy).pass());
}

TEST(Teleport, UnreliableValues) {
  EXPECT_EQ(unreliable_teleport_tree(Strategy::Stick).win, Fraction(1, 2));
  EXPECT_EQ(unreliable_teleport_tree(Strategy::Switch).win, Fraction(1, 4));
  EXPECT_EQ(unreliable_teleport_tree(Strategy::Stick).condition, Fraction(1, 2));
  RandomSource rng(74);
  for (Strategy s : {Strategy::Stick, Strategy::Switch}) EXPECT_TRUE(unreliable_teleport(s, 20000, rng).pass());
}

TEST(Superdense, AllMessages) {
  RandomSource rng(75);
  for (const char* m : {"00", "01", "10", "11"}) EXPECT_EQ(superdense_roundtrip(m, rng), m);
  EXPECT_THROW(superdense_roundtrip("2", rng), std::invalid_argument);
}

TEST(Chsh, ClassicalOptimumByEnumeration) {
  // Deterministic strategies a(x), b(y); win iff a xor b == x and y.
  Fraction best(0);
  for (int sa = 0; sa < 4; ++sa)
    for (int sb = 0; sb < 4; ++sb) {
      int wins = 0;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) wins += (((sa >> x) & 1) ^ ((sb >> y) & 1)) == (x & y);
      best = std::max(best, Fraction(wins, 4));
    }
  EXPECT_EQ(chsh_classical_optimum(), best);
  EXPECT_EQ(best, Fraction(3, 4));
}

TEST(Chsh, QuantumValue) {
  EXPECT_NEAR(chsh_game_analytic(ChshPlayers::Quantum), 0.5 * (1.0 + std::numbers::sqrt2 / 2.0), 1e-12);
  EXPECT_NEAR(chsh_game_analytic(ChshPlayers::Quantum), std::pow(std::cos(std::numbers::pi / 8), 2), 1e-12);
  RandomSource rng(76);
  EXPECT_TRUE(chsh_game(ChshPlayers::Quantum, 20000, rng).pass());
  EXPECT_TRUE(chsh_game(ChshPlayers::Classical, 20000, rng).pass());
}

TEST(Pbr, OnticValues) {
  EXPECT_EQ(pbr_tree(Ontology::ontic(), Strategy::Stick).win, Fraction(3, 11));
  EXPECT_EQ(pbr_tree(Ontology::ontic(), Strategy::Switch).win, Fraction(4, 11));
}

TEST(Pbr, EpistemicTreeMatchesClosedForm) {
  for (const char* qs : {"0", "1/16", "1/8", "1/4", "1/3", "1/2", "3/4"}) {
    const Fraction q = parse_fraction(qs);
    for (Strategy s : {Strategy::Stick, Strategy::Switch}) {
      EXPECT_EQ(pbr_tree(Ontology::epistemic_q(q), s).win, pbr_closed_form(q, s)) << qs;
    }
  }
  EXPECT_EQ(pbr_closed_form(Fraction(1, 4), Strategy::Stick), pbr_closed_form(Fraction(1, 4), Strategy::Switch));
}

TEST(Pbr, SplitDoesNotChangeValue) {
  const Fraction q(1, 5);
  for (Strategy s : {Strategy::Stick, Strategy::Switch}) {
    const Fraction even = pbr_tree(Ontology::epistemic_q(q), s).win;
    EXPECT_EQ(pbr_tree(Ontology::epistemic_split(q, Fraction(0), Fraction(0)), s).win, even);
    EXPECT_EQ(pbr_tree(Ontology::epistemic_split(Fraction(0), Fraction(1, 10), Fraction(1, 10)), s).win, even);
  }
  EXPECT_THROW(Ontology::epistemic_split(Fraction(1, 2), Fraction(0), Fraction(0)), std::invalid_argument);
}

TEST(Pbr, SimulationsWithinThreeSigma) {
  RandomSource rng(77);
  for (Strategy s : {Strategy::Stick, Strategy::Switch}) {
    EXPECT_TRUE(pbr_game(Ontology::ontic(), s, 20000, rng).pass());
    EXPECT_TRUE(pbr_game(Ontology::epistemic_q(Fraction(1, 4)), s, 20000, rng).pass());
  }
}

TEST(Qkd, CleanChannelAgrees) {
  RandomSource rng(78);
  for (QkdProtocol p : {QkdProtocol::BB84, QkdProtocol::E91}) {
    const QkdResult r = qkd_session(p, 500, Eavesdropper::None, rng);
    EXPECT_EQ(r.alice_key.size(), 500u);
    EXPECT_EQ(r.alice_key, r.bob_key);
    EXPECT_EQ(r.qber, 0.0);
    EXPECT_GE(r.rounds, 500u);
  }
}

TEST(Qkd, InterceptResendGivesQuarterErrors) {
  RandomSource rng(79);
  const std::size_t bits = 4000;
  for (QkdProtocol p : {QkdProtocol::BB84, QkdProtocol::E91}) {
    const QkdResult r = qkd_session(p, bits, Eavesdropper::InterceptResend, rng);
    EXPECT_NEAR(r.qber, 0.25, 4.0 * std::sqrt(0.1875 / bits));
  }
}

}  // namespace
}  // namespace chronoq
