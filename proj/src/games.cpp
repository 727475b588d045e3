// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/games.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chronoq/chain.hpp"
#include "chronoq/entangle.hpp"
#include "json.hpp"

namespace chronoq {

// ----------------------------------------------------------------- fractions

Fraction parse_fraction(std::string_view text) {
  const std::string t(text);
  if (t.empty()) throw std::invalid_argument("empty fraction");
  try {
    const auto slash = t.find('/');
    if (slash != std::string::npos) {
      const long long num = std::stoll(t.substr(0, slash));
      const long long den = std::stoll(t.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Fraction(num, den);
    }
    const auto dot = t.find('.');
    if (dot == std::string::npos) return Fraction(std::stoll(t));
    const std::string frac = t.substr(dot + 1);
    if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad decimal");
    }
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::string whole = t.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    const long long w = (whole.empty() || whole == "-") ? 0 : std::stoll(whole);
    const long long f = frac.empty() ? 0 : std::stoll(frac);
    return Fraction(w * scale + (neg ? -f : f), scale);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse fraction '" + t + "'");
  }
}

double to_double(const Fraction& f) { return boost::rational_cast<double>(f); }

std::string to_string(const Fraction& f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

std::string to_string(Strategy s) { return s == Strategy::Stick ? "stick" : "switch"; }

Strategy parse_strategy(std::string_view text) {
  if (text == "stick") return Strategy::Stick;
  if (text == "switch") return Strategy::Switch;
  throw std::invalid_argument("strategy must be 'stick' or 'switch'");
}

// ----------------------------------------------------------------- GameStats

bool GameStats::pass() const { return std::abs(empirical - analytic) <= 3.0 * std_err + 1e-12; }

std::string GameStats::to_json() const {
  nlohmann::ordered_json j;
  j["game"] = game;
  j["strategy"] = strategy;
  j["trials"] = trials;
  j["kept"] = kept;
  j["wins"] = wins;
  j["empirical"] = empirical;
  j["analytic"] = analytic;
  if (!analytic_exact.empty()) j["analytic_exact"] = analytic_exact;
  j["std_err"] = std_err;
  j["condition_empirical"] = condition_empirical;
  j["condition_analytic"] = condition_analytic;
  j["pass"] = pass();
  return j.dump();
}

namespace {

void require_trials(std::size_t trials) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
}

GameStats finish(std::string game, std::string strategy, std::size_t trials, std::size_t kept, std::size_t wins,
                 const TreeValue& tree) {
  GameStats g;
  g.game = std::move(game);
  g.strategy = std::move(strategy);
  g.trials = trials;
  g.kept = kept;
  g.wins = wins;
  g.empirical = kept ? static_cast<double>(wins) / static_cast<double>(kept) : 0.0;
  g.std_err = kept ? std::sqrt(g.empirical * (1.0 - g.empirical) / static_cast<double>(kept)) : 0.0;
  g.analytic = to_double(tree.win);
  g.analytic_exact = to_string(tree.win);
  g.condition_empirical = static_cast<double>(kept) / static_cast<double>(trials);
  g.condition_analytic = to_double(tree.condition);
  return g;
}

TreeValue close_tree(Fraction joint, Fraction condition, Fraction total) {
  if (total != Fraction(1)) throw std::logic_error("probability tree leaves do not sum to 1");
  if (condition == Fraction(0)) throw std::logic_error("conditioning event has probability 0");
  return {joint / condition, condition, joint, total};
}

// Uniform pick among doors in [0, n) not in `excluded`.
int pick_other(int n, std::initializer_list<int> excluded, RandomSource& rng) {
  std::vector<int> opts;
  for (int d = 0; d < n; ++d) {
    bool ok = true;
    for (int e : excluded) ok = ok && d != e;
    if (ok) opts.push_back(d);
  }
  return opts[rng.uniform_index(opts.size())];
}

std::vector<int> others(int n, std::initializer_list<int> excluded) {
  std::vector<int> opts;
  for (int d = 0; d < n; ++d) {
    bool ok = true;
    for (int e : excluded) ok = ok && d != e;
    if (ok) opts.push_back(d);
  }
  return opts;
}

}  // namespace

// -------------------------------------------------------------- Monty Hall

TreeValue monty_classic_tree(Strategy s) {
  Fraction total(0), joint(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Fraction pc(0);
        if (i == j && k != i) pc = Fraction(1, 2);
        if (i != j && k != i && k != j) pc = Fraction(1);
        const Fraction leaf = Fraction(1, 3) * Fraction(1, 3) * pc;
        total += leaf;
        if (leaf == Fraction(0)) continue;
        const bool win = (s == Strategy::Stick) ? (i == j) : (i != j);
        if (win) joint += leaf;
      }
  return close_tree(joint, Fraction(1), total);
}

GameStats monty_classic(Strategy s, std::size_t trials, RandomSource& rng) {
  require_trials(trials);
  std::size_t wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const int prize = static_cast<int>(rng.uniform_index(3));
    const int pick = static_cast<int>(rng.uniform_index(3));
    const int opened = pick_other(3, {prize, pick}, rng);
    const int final_door = (s == Strategy::Stick) ? pick : pick_other(3, {pick, opened}, rng);
    if (final_door == prize) ++wins;
  }
  return finish("monty_classic", to_string(s), trials, trials, wins, monty_classic_tree(s));
}

TreeValue monty_ignorant_tree(Strategy s) {
  Fraction total(0), joint(0), goat(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (k == j) continue;
        const Fraction leaf = Fraction(1, 3) * Fraction(1, 3) * Fraction(1, 2);
        total += leaf;
        if (i == k) continue;
        goat += leaf;
        // Switching lands on the single door that is neither j nor k.
        const bool win = (s == Strategy::Stick) ? (i == j) : (i != j);
        if (win) joint += leaf;
      }
  return close_tree(joint, goat, total);
}

Fraction monty_ignorant_accident() { return Fraction(1) - monty_ignorant_tree(Strategy::Stick).condition; }

GameStats monty_ignorant(Strategy s, std::size_t trials, RandomSource& rng) {
  require_trials(trials);
  std::size_t kept = 0, wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const int prize = static_cast<int>(rng.uniform_index(3));
    const int pick = static_cast<int>(rng.uniform_index(3));
    const int opened = pick_other(3, {pick}, rng);
    if (opened == prize) continue;
    ++kept;
    const int final_door = (s == Strategy::Stick) ? pick : pick_other(3, {pick, opened}, rng);
    if (final_door == prize) ++wins;
  }
  return finish("monty_ignorant", to_string(s), trials, kept, wins, monty_ignorant_tree(s));
}

// ------------------------------------------------------------ teleportation

namespace {

StateVector bell_door_state(int door) { return superdense_bell(Record{door >> 1, door & 1}); }

// psi (x) beta, then CNOT(0 -> 1) and H(0).
StateVector alice_stage(const StateVector& psi, const StateVector& pair) {
  if (psi.dim() != 2) throw std::invalid_argument("teleport: one-qubit input expected");
  StateVector s = tensor_product(psi, pair);
  s = apply_gate(s, standard_gate("CNOT"), {0, 1});
  return apply_gate(s, standard_gate("H"), {0});
}

// Bob's unnormalised vector when Alice finds outcome door ab.
Vec bob_branch(const StateVector& stage, int door) {
  Vec v(2);
  v(0) = stage[static_cast<std::size_t>(door) << 1];
  v(1) = stage[(static_cast<std::size_t>(door) << 1) | 1];
  return v;
}

}  // namespace

Operator teleport_correction(int bell_door, int outcome_door) {
  if (bell_door < 0 || bell_door > 3 || outcome_door < 0 || outcome_door > 3) {
    throw std::invalid_argument("teleport_correction: doors are 0..3");
  }
  const StateVector pair = bell_door_state(bell_door);
  // Bob's branch is linear in the input, so read the map off basis inputs.
  Operator m(2, 2);
  for (int c = 0; c < 2; ++c) m.col(c) = bob_branch(alice_stage(StateVector::basis(2, static_cast<std::size_t>(c)), pair), outcome_door);
  return 0.5 * m.inverse();
}

TeleportResult teleport_branch(const StateVector& psi, int a, int b) {
  const StateVector stage = alice_stage(psi, bell_state(BellLabel::PhiPlus));
  TeleportResult r;
  r.a = a;
  r.b = b;
  r.bob_premeasure_reduced = partial_trace(DensityOperator::pure(stage), {2, 2, 2}, {2});
  const Vec bob = bob_branch(stage, 2 * a + b);
  const Vec corrected = teleport_correction(0, 2 * a + b) * bob;
  r.bob_state = StateVector::normalized(corrected);
  r.fidelity = overlap_sq(r.bob_state, psi);
  return r;
}

TeleportResult teleport_standard(const StateVector& psi, RandomSource& rng) {
  const StateVector stage = alice_stage(psi, bell_state(BellLabel::PhiPlus));
  const Basis z = computational_basis(2);
  const QubitOutcome ma = measure_and_remove(stage, 0, z, rng);
  const QubitOutcome mb = measure_and_remove(ma.remaining, 0, z, rng);
  TeleportResult r;
  r.a = ma.outcome;
  r.b = mb.outcome;
  r.bob_premeasure_reduced = partial_trace(DensityOperator::pure(stage), {2, 2, 2}, {2});
  // Correction table: X^b then Z^a.
  Operator fix = Operator::Identity(2, 2);
  if (r.b) fix = pauli('X') * fix;
  if (r.a) fix = pauli('Z') * fix;
  r.bob_state = StateVector::normalized(fix * mb.remaining.amplitudes());
  r.fidelity = overlap_sq(r.bob_state, psi);
  return r;
}

TreeValue monty_teleport_tree(Strategy s, int xy) {
  if (xy < 0 || xy > 3) throw std::invalid_argument("contestant door must be 0..3");
  Fraction total(0), joint(0);
  for (int ab = 0; ab < 4; ++ab) {
    const Fraction pa(1, 4);
    const auto goats = others(4, {xy, ab});
    for (int cd : goats) {
      const Fraction pc(1, static_cast<long long>(goats.size()));
      if (s == Strategy::Stick) {
        total += pa * pc;
        if (ab == xy) joint += pa * pc;
        continue;
      }
      const auto doors = others(4, {xy, cd});
      for (int ef : doors) {
        const Fraction leaf = pa * pc * Fraction(1, static_cast<long long>(doors.size()));
        total += leaf;
        if (ef == ab) joint += leaf;
      }
    }
  }
  return close_tree(joint, Fraction(1), total);
}

GameStats monty_teleport(Strategy s, std::size_t trials, RandomSource& rng, int xy) {
  require_trials(trials);
  if (xy < 0 || xy > 3) throw std::invalid_argument("contestant door must be 0..3");
  const Basis z = computational_basis(2);
  const StateVector pair = bell_door_state(xy);
  Operator corrections[4];
  for (int d = 0; d < 4; ++d) corrections[d] = teleport_correction(xy, d);
  std::size_t wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const StateVector psi = random_state(2, rng);
    const StateVector stage = alice_stage(psi, pair);
    const QubitOutcome ma = measure_and_remove(stage, 0, z, rng);
    const QubitOutcome mb = measure_and_remove(ma.remaining, 0, z, rng);
    const int ab = 2 * ma.outcome + mb.outcome;
    const int cd = pick_other(4, {xy, ab}, rng);
    Vec bob = mb.remaining.amplitudes();
    if (s == Strategy::Switch) bob = corrections[pick_other(4, {xy, cd}, rng)] * bob;
    if (overlap_sq(StateVector::normalized(bob), psi) > 1.0 - 1e-9) ++wins;
  }
  return finish("monty_teleport", to_string(s), trials, trials, wins, monty_teleport_tree(s, xy));
}

TreeValue unreliable_teleport_tree(Strategy s) {
  Fraction total(0), joint(0), got0(0);
  for (int ab = 0; ab < 4; ++ab) {
    const int bits[2] = {ab >> 1, ab & 1};
    for (int kept_bit = 0; kept_bit < 2; ++kept_bit) {
      const Fraction p = Fraction(1, 4) * Fraction(1, 2);
      if (bits[kept_bit] != 0) {
        total += p;
        continue;
      }
      got0 += p;
      if (s == Strategy::Stick) {
        total += p;
        if (ab == 0) joint += p;
        continue;
      }
      for (int ef : {1, 2}) {
        total += p * Fraction(1, 2);
        if (ef == ab) joint += p * Fraction(1, 2);
      }
    }
  }
  return close_tree(joint, got0, total);
}

GameStats unreliable_teleport(Strategy s, std::size_t trials, RandomSource& rng) {
  require_trials(trials);
  const Basis z = computational_basis(2);
  const StateVector pair = bell_state(BellLabel::PhiPlus);
  std::size_t kept = 0, wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const StateVector psi = random_state(2, rng);
    const StateVector stage = alice_stage(psi, pair);
    const QubitOutcome ma = measure_and_remove(stage, 0, z, rng);
    const QubitOutcome mb = measure_and_remove(ma.remaining, 0, z, rng);
    const int received = rng.bernoulli(0.5) ? ma.outcome : mb.outcome;
    if (received != 0) continue;
    ++kept;
    Vec bob = mb.remaining.amplitudes();
    if (s == Strategy::Switch) bob = teleport_correction(0, rng.bernoulli(0.5) ? 1 : 2) * bob;
    if (overlap_sq(StateVector::normalized(bob), psi) > 1.0 - 1e-9) ++wins;
  }
  return finish("unreliable_teleport", to_string(s), trials, kept, wins, unreliable_teleport_tree(s));
}

std::string superdense_roundtrip(const std::string& bits, RandomSource& rng) {
  if (bits.size() != 2 || bits.find_first_not_of("01") != std::string::npos) {
    throw std::invalid_argument("superdense: two-bit string expected");
  }
  StateVector s = bell_state(BellLabel::PhiPlus);
  if (bits[1] == '1') s = apply_gate(s, pauli('X'), {0});
  if (bits[0] == '1') s = apply_gate(s, pauli('Z'), {0});
  s = apply_gate(s, standard_gate("CNOT"), {0, 1});
  s = apply_gate(s, standard_gate("H"), {0});
  const MeasurementOutcome m = measure(s, computational_basis(4), rng);
  return std::string{static_cast<char>('0' + ((m.index >> 1) & 1)), static_cast<char>('0' + (m.index & 1))};
}

// --------------------------------------------------------------- CHSH game

std::string to_string(ChshPlayers p) { return p == ChshPlayers::Classical ? "classical" : "quantum"; }

double chsh_game_analytic(ChshPlayers p) {
  if (p == ChshPlayers::Classical) return 0.75;
  return 0.5 * (1.0 + std::numbers::sqrt2 / 2.0);
}

Fraction chsh_classical_optimum() {
  Fraction best(0);
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb) {
      int wins = 0;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const int a = (fa >> x) & 1;
          const int b = (fb >> y) & 1;
          if ((x & y) == (a ^ b)) ++wins;
        }
      best = std::max(best, Fraction(wins, 4));
    }
  return best;
}

GameStats chsh_game(ChshPlayers p, std::size_t trials, RandomSource& rng) {
  require_trials(trials);
  // P(a, b | x, y) with bit 0 for the +1 eigenvalue.
  double dist[2][2][4] = {};
  if (p == ChshPlayers::Quantum) {
    const ObservableSettings s = reference_chsh_settings();
    const Operator alice[2] = {s.A2, s.A1};
    const Operator bob[2] = {s.B1, s.B2};
    const DensityOperator rho = DensityOperator::pure(bell_state(BellLabel::PsiMinus));
    const Operator id = Operator::Identity(2, 2);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const Operator pa = 0.5 * (id + (a ? -1.0 : 1.0) * alice[x]);
            const Operator pb = 0.5 * (id + (b ? -1.0 : 1.0) * bob[y]);
            dist[x][y][2 * a + b] = std::max(0.0, expectation(rho, tensor_product(pa, pb)));
          }
  }
  std::size_t wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const int x = rng.bernoulli(0.5) ? 1 : 0;
    const int y = rng.bernoulli(0.5) ? 1 : 0;
    int a = 0, b = 0;
    if (p == ChshPlayers::Quantum) {
      const std::size_t k = rng.categorical(dist[x][y], 4);
      a = static_cast<int>(k >> 1);
      b = static_cast<int>(k & 1);
    }
    if ((x & y) == (a ^ b)) ++wins;
  }
  TreeValue tv;
  GameStats g = finish("chsh_game", to_string(p), trials, trials, wins, tv);
  g.analytic = chsh_game_analytic(p);
  g.analytic_exact = (p == ChshPlayers::Classical) ? "3/4" : "";
  g.condition_analytic = 1.0;
  return g;
}

// ---------------------------------------------------------------- PBR game

Ontology Ontology::ontic() { return {}; }

Ontology Ontology::epistemic_q(const Fraction& q) { return epistemic_split(q / 3, q / 3, q / 3); }

Ontology Ontology::epistemic_split(const Fraction& q1, const Fraction& q2, const Fraction& q3) {
  if (q1 < 0 || q2 < 0 || q3 < 0) throw std::invalid_argument("epistemic split: q_i must be non-negative");
  if (q1 > Fraction(1, 4) || q2 > Fraction(1, 4) || q3 > Fraction(1, 2)) {
    throw std::invalid_argument("epistemic split: door probabilities would be negative");
  }
  Ontology o;
  o.epistemic = true;
  o.q1 = q1;
  o.q2 = q2;
  o.q3 = q3;
  return o;
}

std::array<Fraction, 4> Ontology::prize_distribution() const {
  return {q(), Fraction(1, 4) - q1, Fraction(1, 4) - q2, Fraction(1, 2) - q3};
}

namespace {

// Monty opens door 1 unless the contestant holds it.
Fraction pbr_monty(int j, int k) {
  if (j == 0) return k == 0 ? Fraction(0) : Fraction(1, 3);
  return k == 0 ? Fraction(1) : Fraction(0);
}

}  // namespace

TreeValue pbr_tree(const Ontology& o, Strategy s) {
  const auto pa = o.prize_distribution();
  Fraction total(0), joint(0), goat(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const Fraction base = pa[static_cast<std::size_t>(i)] * Fraction(1, 4) * pbr_monty(j, k);
        if (s == Strategy::Stick) {
          total += base;
          if (i != k) goat += base;
          if (i != k && i == j) joint += base;
          continue;
        }
        if (base == Fraction(0)) {
          total += base;
          continue;
        }
        if (i != k) goat += base;
        const auto doors = others(4, {j, k});
        for (int l : doors) {
          const Fraction leaf = base * Fraction(1, static_cast<long long>(doors.size()));
          total += leaf;
          if (i != k && l == i) joint += leaf;
        }
      }
  return close_tree(joint, goat, total);
}

Fraction pbr_closed_form(const Fraction& q, Strategy s) {
  const Fraction den = Fraction(11) - Fraction(8) * q;
  return s == Strategy::Stick ? Fraction(3) / den : (Fraction(4) - Fraction(4) * q) / den;
}

GameStats pbr_game(const Ontology& o, Strategy s, std::size_t trials, RandomSource& rng) {
  require_trials(trials);
  const auto pa = o.prize_distribution();
  const double w[4] = {to_double(pa[0]), to_double(pa[1]), to_double(pa[2]), to_double(pa[3])};
  std::size_t kept = 0, wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const int prize = static_cast<int>(rng.categorical(w, 4));
    const int pick = static_cast<int>(rng.uniform_index(4));
    const int opened = (pick == 0) ? 1 + static_cast<int>(rng.uniform_index(3)) : 0;
    if (opened == prize) continue;
    ++kept;
    const int final_door = (s == Strategy::Stick) ? pick : pick_other(4, {pick, opened}, rng);
    if (final_door == prize) ++wins;
  }
  return finish(o.epistemic ? "pbr_epistemic" : "pbr_ontic", to_string(s), trials, kept, wins, pbr_tree(o, s));
}

// -------------------------------------------------------------------- QKD

std::string to_string(QkdProtocol p) { return p == QkdProtocol::BB84 ? "bb84" : "e91"; }
std::string to_string(Eavesdropper e) { return e == Eavesdropper::None ? "none" : "intercept_resend"; }

std::string QkdResult::to_json() const {
  nlohmann::ordered_json j;
  j["alice_key"] = alice_key;
  j["bob_key"] = bob_key;
  j["rounds"] = rounds;
  j["qber"] = qber;
  return j.dump();
}

namespace {

Basis qkd_basis(int b) {
  if (b == 0) return computational_basis(2);
  const double r = 1.0 / std::sqrt(2.0);
  Vec plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  return {plus, minus};
}

StateVector basis_state(int basis, int bit) { return StateVector(qkd_basis(basis)[static_cast<std::size_t>(bit)]); }

}  // namespace

QkdResult qkd_session(QkdProtocol p, std::size_t key_bits, Eavesdropper eve, RandomSource& rng) {
  if (key_bits < 1) throw std::invalid_argument("qkd_session: key_bits must be positive");
  QkdResult r;
  while (r.alice_key.size() < key_bits) {
    ++r.rounds;
    const int ab = rng.bernoulli(0.5) ? 1 : 0;
    const int bb = rng.bernoulli(0.5) ? 1 : 0;
    int a_bit = 0, b_bit = 0;
    if (p == QkdProtocol::BB84) {
      a_bit = rng.bernoulli(0.5) ? 1 : 0;
      StateVector q = basis_state(ab, a_bit);
      if (eve == Eavesdropper::InterceptResend) {
        const int eb = rng.bernoulli(0.5) ? 1 : 0;
        q = basis_state(eb, static_cast<int>(measure(q, qkd_basis(eb), rng).index));
      }
      b_bit = static_cast<int>(measure(q, qkd_basis(bb), rng).index);
    } else {
      StateVector pair = bell_state(BellLabel::PhiPlus);
      if (eve == Eavesdropper::InterceptResend) {
        const int eb = rng.bernoulli(0.5) ? 1 : 0;
        const QubitOutcome e = measure_and_remove(pair, 1, qkd_basis(eb), rng);
        pair = tensor_product(e.remaining, basis_state(eb, e.outcome));
      }
      const QubitOutcome ma = measure_and_remove(pair, 0, qkd_basis(ab), rng);
      a_bit = ma.outcome;
      b_bit = static_cast<int>(measure(ma.remaining, qkd_basis(bb), rng).index);
    }
    if (ab != bb) continue;
    r.alice_key.push_back(static_cast<char>('0' + a_bit));
    r.bob_key.push_back(static_cast<char>('0' + b_bit));
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < r.alice_key.size(); ++i) errors += r.alice_key[i] != r.bob_key[i];
  r.qber = static_cast<double>(errors) / static_cast<double>(r.alice_key.size());
  return r;
}

}  // namespace chronoq
