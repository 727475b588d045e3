// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: `acceptance N` checks criterion N (1..11) and prints one
// PASS/FAIL line for it, preceded by indented detail lines.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/special_functions/binomial.hpp>

#include "chronoq/chain.hpp"
#include "chronoq/consensus.hpp"
#include "chronoq/entangle.hpp"
#include "chronoq/foundations.hpp"
#include "chronoq/games.hpp"
#include "chronoq/infotheory.hpp"
#include "chronoq/temporal.hpp"

namespace {

using namespace chronoq;

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
const BellLabel kLabels[4] = {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << what << "\n";
    all_ = all_ && ok;
  }
  bool all() const { return all_; }

 private:
  bool all_ = true;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------------ 1

// Best CHSH from the two largest singular values of the correlation tensor.
double horodecki_chsh(const DensityOperator& rho) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(correlation_tensor(rho));
  const auto s = svd.singularValues();
  return 2.0 * std::sqrt(s(0) * s(0) + s(1) * s(1));
}

void criterion1(Checks& c) {
  const DensityOperator singlet = DensityOperator::pure(bell_state(BellLabel::PsiMinus));
  const ObservableSettings s = reference_chsh_settings();
  const double analytic = chsh_value(singlet, s);
  c.expect(std::abs(analytic - 2 * kSqrt2) <= 1e-9, "analytic S = " + fmt(analytic) + " vs 2 sqrt2");

  RandomSource rng(1001);
  const std::size_t trials = 100000;
  const ChshEstimate mc = chsh_monte_carlo(singlet, s, trials, rng);
  const std::array<const Operator*, 4> a{&s.A1, &s.A2, &s.A2, &s.A1};
  const std::array<const Operator*, 4> b{&s.B1, &s.B1, &s.B2, &s.B2};
  for (std::size_t k = 0; k < 4; ++k) {
    const double exact = expectation(singlet, tensor_product(*a[k], *b[k]));
    const double se = std::sqrt(std::max(1.0 - exact * exact, 1e-12) / static_cast<double>(trials));
    c.expect(std::abs(mc.correlators[k] - exact) <= 3 * se,
             "correlator " + std::to_string(k) + " MC " + fmt(mc.correlators[k]) + " vs " + fmt(exact) + " (3 SE " + fmt(3 * se) + ")");
  }
  c.expect(std::abs(mc.value - analytic) <= 3 * mc.std_err, "MC S = " + fmt(mc.value) + " +- " + fmt(mc.std_err));

  const double crossing = werner_chsh_crossing();
  c.expect(std::abs(crossing - 0.7803) <= 0.005, "Werner crossing by settings optimisation F = " + fmt(crossing));
  // Second route: bisection on the correlation-tensor formula.
  double lo = 0.5, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (horodecki_chsh(werner_state(mid).rho) > 2.0 ? hi : lo) = mid;
  }
  c.expect(std::abs(crossing - lo) <= 1e-5, "closed-form crossing F = " + fmt(lo));
}

// ------------------------------------------------------------------ 2

void criterion2(Checks& c) {
  double worst_literal = 0.0, worst_trace_one = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double f = k / 100.0;
    const Eigen::VectorXd ev = hermitian_eigenvalues(partial_transpose(werner_state(f).rho, {2, 2}, TransposeSide::B));
    std::vector<double> got(ev.data(), ev.data() + ev.size());
    std::sort(got.begin(), got.end());
    std::vector<double> literal{(2 * f + 1) / 3, (2 * f + 1) / 3, (2 * f + 1) / 3, (3 - 6 * f) / 3};
    std::vector<double> trace_one{(2 * f + 1) / 6, (2 * f + 1) / 6, (2 * f + 1) / 6, (3 - 6 * f) / 6};
    std::sort(literal.begin(), literal.end());
    std::sort(trace_one.begin(), trace_one.end());
    for (std::size_t i = 0; i < 4; ++i) {
      worst_literal = std::max(worst_literal, std::abs(got[i] - literal[i]));
      worst_trace_one = std::max(worst_trace_one, std::abs(got[i] - trace_one[i]));
    }
  }
  c.expect(worst_literal <= 1e-9, "eigenvalues {(2F+1)/3 x3, (3-6F)/3}: max deviation " + fmt(worst_literal) +
                                      " (these sum to 2; a trace-one operator cannot have them)");
  c.expect(worst_trace_one <= 1e-9, "eigenvalues {(2F+1)/6 x3, (3-6F)/6}: max deviation " + fmt(worst_trace_one));

  const double at_half = ppt_min_eigenvalue(werner_state(0.5).rho, {2, 2});
  const double above = ppt_min_eigenvalue(werner_state(0.5 + 1e-6).rho, {2, 2});
  const double below = ppt_min_eigenvalue(werner_state(0.5 - 1e-6).rho, {2, 2});
  c.expect(std::abs(at_half) <= 1e-9 && above < 0.0 && below > 0.0,
           "negativity onset at F = 0.5: min eig " + fmt(below) + ", " + fmt(at_half) + ", " + fmt(above));
}

// ------------------------------------------------------------------ 3

void criterion3(Checks& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t trials = 100000;
  RandomSource rng(3001);
  auto exact = [&](const TreeValue& t, Fraction want, const std::string& name) {
    c.expect(t.win == want && t.leaf_total == Fraction(1), name + " exact " + to_string(t.win) + " vs " + to_string(want));
  };
  auto mc = [&](const GameStats& g) {
    c.expect(g.pass(), g.game + " " + g.strategy + " MC " + fmt(g.empirical) + " vs " + fmt(g.analytic) + " (SE " +
                           fmt(g.std_err) + ")");
  };
  const Strategy kStick = Strategy::Stick, kSwitch = Strategy::Switch;

  exact(monty_classic_tree(kSwitch), Fraction(2, 3), "classic Monty switch");
  exact(monty_classic_tree(kStick), Fraction(1, 3), "classic Monty stick");
  mc(monty_classic(kSwitch, trials, rng));
  mc(monty_classic(kStick, trials, rng));

  exact(monty_ignorant_tree(kSwitch), Fraction(1, 2), "ignorant Monty switch");
  exact(monty_ignorant_tree(kStick), Fraction(1, 2), "ignorant Monty stick");
  c.expect(monty_ignorant_accident() == Fraction(1, 3), "ignorant Monty accident " + to_string(monty_ignorant_accident()));
  for (Strategy s : {kStick, kSwitch}) {
    const GameStats g = monty_ignorant(s, trials, rng);
    mc(g);
    const double acc = 1.0 - g.condition_empirical;
    const double se = std::sqrt(acc * (1 - acc) / static_cast<double>(trials));
    c.expect(std::abs(acc - 1.0 / 3.0) <= 3 * se, "ignorant Monty accident MC " + fmt(acc));
  }

  exact(monty_teleport_tree(kStick), Fraction(2, 8), "Monty teleport stick");
  exact(monty_teleport_tree(kSwitch), Fraction(3, 8), "Monty teleport switch");
  mc(monty_teleport(kStick, trials, rng));
  mc(monty_teleport(kSwitch, trials, rng));

  exact(unreliable_teleport_tree(kStick), Fraction(1, 2), "unreliable teleport stick");
  exact(unreliable_teleport_tree(kSwitch), Fraction(1, 4), "unreliable teleport switch");
  mc(unreliable_teleport(kStick, trials, rng));
  mc(unreliable_teleport(kSwitch, trials, rng));

  exact(pbr_tree(Ontology::ontic(), kStick), Fraction(3, 11), "PBR ontic stick");
  exact(pbr_tree(Ontology::ontic(), kSwitch), Fraction(4, 11), "PBR ontic switch");
  mc(pbr_game(Ontology::ontic(), kStick, trials, rng));
  mc(pbr_game(Ontology::ontic(), kSwitch, trials, rng));

  bool formulas = true;
  for (int k = 0; k <= 12; ++k) {
    const Fraction q(k, 16);
    const Fraction den = Fraction(11) - Fraction(8) * q;
    formulas = formulas && pbr_tree(Ontology::epistemic_q(q), kStick).win == Fraction(3) / den;
    formulas = formulas && pbr_tree(Ontology::epistemic_q(q), kSwitch).win == (Fraction(4) - Fraction(4) * q) / den;
  }
  c.expect(formulas, "PBR epistemic tree equals 3/(11-8q) and (4-4q)/(11-8q) for q = 0, 1/16, ..., 3/4");
  const Fraction q4(1, 4);
  c.expect(pbr_tree(Ontology::epistemic_q(q4), kStick).win == pbr_tree(Ontology::epistemic_q(q4), kSwitch).win,
           "PBR epistemic stick = switch at q = 1/4 (" + to_string(pbr_tree(Ontology::epistemic_q(q4), kStick).win) + ")");
  bool unequal_elsewhere = true;
  for (int k = 0; k <= 12; ++k)
    if (k != 4) unequal_elsewhere = unequal_elsewhere && pbr_closed_form(Fraction(k, 16), kStick) != pbr_closed_form(Fraction(k, 16), kSwitch);
  c.expect(unequal_elsewhere, "PBR epistemic stick != switch for q != 1/4 on the grid");
  mc(pbr_game(Ontology::epistemic_q(q4), kStick, trials, rng));
  mc(pbr_game(Ontology::epistemic_q(q4), kSwitch, trials, rng));

  c.expect(chsh_classical_optimum() == Fraction(3, 4), "CHSH classical optimum " + to_string(chsh_classical_optimum()));
  const double quantum = chsh_game_analytic(ChshPlayers::Quantum);
  c.expect(std::abs(quantum - 0.5 * (1 + kSqrt2 / 2)) <= 1e-12, "CHSH quantum " + fmt(quantum));
  mc(chsh_game(ChshPlayers::Classical, trials, rng));
  mc(chsh_game(ChshPlayers::Quantum, trials, rng));

  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime " + fmt(secs) + " s");
}

// ------------------------------------------------------------------ 4

void criterion4(Checks& c) {
  RandomSource rng(4001);
  const Operator half = 0.5 * Operator::Identity(2, 2);
  double worst_fid = 0.0, worst_mix = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const StateVector psi = random_state(2, rng);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const TeleportResult r = teleport_branch(psi, a, b);
        worst_fid = std::max(worst_fid, std::abs(1.0 - overlap_sq(r.bob_state, psi)));
        worst_mix = std::max(worst_mix, (r.bob_premeasure_reduced.matrix() - half).cwiseAbs().maxCoeff());
      }
  }
  c.expect(worst_fid <= 1e-9, "fidelity over 1000 states x 4 branches: max |1 - F| = " + fmt(worst_fid));
  c.expect(worst_mix <= 1e-9, "Bob's pre-message state vs I/2: max deviation " + fmt(worst_mix));

  std::array<int, 4> seen{};
  double sampled = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const TeleportResult r = teleport_standard(random_state(2, rng), rng);
    ++seen[static_cast<std::size_t>(2 * r.a + r.b)];
    sampled = std::max(sampled, std::abs(1.0 - r.fidelity));
  }
  c.expect(sampled <= 1e-9 && *std::min_element(seen.begin(), seen.end()) > 0,
           "sampled protocol: max |1 - F| = " + fmt(sampled) + ", every branch visited");
}

// ------------------------------------------------------------------ 5

void criterion5(Checks& c) {
  for (BellLabel pair : kLabels) {
    double worst = 0.0;
    for (BellLabel mid : kLabels) {
      // The outer pair must be some Bell state for every outcome.
      const StateVector outer = swap_outer_state(pair, mid);
      double best = 0.0;
      for (BellLabel target : kLabels) best = std::max(best, overlap_sq(outer, bell_state(target)));
      worst = std::max(worst, std::abs(1.0 - best));
    }
    c.expect(worst <= 1e-9, "pairs " + to_string(pair) + ": outer pair is a Bell state for all four outcomes, max |1 - F| = " + fmt(worst));
  }
  double singlet = 0.0;
  for (BellLabel mid : kLabels)
    singlet = std::max(singlet, std::abs(1.0 - overlap_sq(swap_outer_state(BellLabel::PsiMinus, mid), bell_state(mid))));
  c.expect(singlet <= 1e-9, "singlet pairs: outer pair equals the middle outcome, max |1 - F| = " + fmt(singlet));

  RandomSource rng(5001);
  bool ordered = true;
  std::array<int, 4> outcomes{};
  for (int i = 0; i < 200; ++i) {
    const TemporalSwapRun run = temporal_swap(BellLabel::PsiMinus, computational_basis(2), computational_basis(2), rng);
    ordered = ordered && consumed_before_created(run.reg, run.photon1, run.photon4);
    ++outcomes[static_cast<std::size_t>(run.middle.label)];
  }
  c.expect(ordered && *std::min_element(outcomes.begin(), outcomes.end()) > 0,
           "event log: photon 1 measured before photon 4 is created in 200 runs covering all outcomes");

  double fused = 0.0;
  for (int pairs = 1; pairs <= 4; ++pairs) {
    TemporalRegister reg;
    ModeId last = create_pair(reg, BellLabel::PhiPlus, "a", "b", 0).second;
    for (int k = 1; k < pairs; ++k) {
      const auto [first, second] = create_pair(reg, BellLabel::PhiPlus, "a", "b", k);
      TemporalRegister trial = reg;
      while (!pbs_fuse(trial, last, first, rng)) trial = reg;
      reg = trial;
      last = second;
    }
    fused = std::max(fused, std::abs(1.0 - overlap_sq(reg.state(), ghz_from_pattern(std::string(static_cast<std::size_t>(2 * pairs), '0')))));
    const DensityOperator rec = ghz_density_recursive(DensityOperator::pure(bell_state(BellLabel::PhiPlus)), pairs);
    fused = std::max(fused, (rec.matrix() - DensityOperator::pure(ghz_state(2 * pairs)).matrix()).cwiseAbs().maxCoeff());
  }
  c.expect(fused <= 1e-9, "Phi+ fusion gives the temporal GHZ closed form for 1..4 pairs, max deviation " + fmt(fused));

  double chain = 0.0;
  int built = 0;
  for (int blocks = 1; blocks <= 4; ++blocks) {
    const std::size_t total = std::size_t{1} << (2 * blocks);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<Record> recs;
      std::string bits;
      for (int k = 0; k < blocks; ++k) {
        const std::size_t r = (idx >> (2 * (blocks - 1 - k))) & 3u;
        recs.push_back({static_cast<int>(r >> 1), static_cast<int>(r & 1u)});
        bits += recs.back().str();
      }
      const QuantumChain qc = build_chain(recs, rng);
      chain = std::max(chain, std::abs(1.0 - overlap_sq(qc.reg().state(), qblock_state(bits))));
      ++built;
    }
  }
  c.expect(chain <= 1e-9, "record chains match the block closed form for all " + std::to_string(built) +
                              " record strings of 1..4 pairs, max |1 - F| = " + fmt(chain));
}

// ------------------------------------------------------------------ 6

void criterion6(Checks& c) {
  RandomSource rng(6001);
  int ok = 0;
  for (std::size_t idx = 0; idx < 64; ++idx) {
    std::vector<Record> recs;
    for (int k = 0; k < 3; ++k) {
      const std::size_t r = (idx >> (2 * (2 - k))) & 3u;
      recs.push_back({static_cast<int>(r >> 1), static_cast<int>(r & 1u)});
    }
    const QuantumChain qc = build_chain(recs, rng);
    const DecodeResult d = decode(qc);
    ok += d.ok() && d.bits == qc.record_string() ? 1 : 0;
  }
  c.expect(ok == 64, "exhaustive triples: " + std::to_string(ok) + "/64 decode exactly");

  int random_ok = 0, tamper_ok = 0, tampers = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t len = 5 + rng.uniform_index(3);
    std::vector<Record> recs;
    for (std::size_t k = 0; k < len; ++k)
      recs.push_back({static_cast<int>(rng.uniform_index(2)), static_cast<int>(rng.uniform_index(2))});
    const QuantumChain qc = build_chain(recs, rng);
    const DecodeResult d = decode(qc);
    random_ok += d.ok() && d.bits == qc.record_string() ? 1 : 0;
    for (const ModeId& m : qc.live_modes()) {
      Operator u = random_unitary(2, rng);
      // Skip draws that are a global phase: they are not tampers.
      if (std::abs(std::abs(u.trace()) / 2.0 - 1.0) < 1e-6) continue;
      const QuantumChain hit = tamper(qc, m, u);
      ++tampers;
      tamper_ok += hit.fidelity() < 1.0 - 1e-6 && decode(hit).status == DecodeStatus::DecodeMismatch ? 1 : 0;
    }
  }
  c.expect(random_ok == 100, "random length 5..7 chains: " + std::to_string(random_ok) + "/100 decode exactly");
  c.expect(tampers > 0 && tamper_ok == tampers,
           "live-mode tampers: " + std::to_string(tamper_ok) + "/" + std::to_string(tampers) + " drop fidelity and raise DECODE_MISMATCH");

  bool suffix = true;
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t idx = 0; idx < n; ++idx) {
      const TamperContrast t = classical_chain_tamper_contrast(n, idx, rng);
      for (std::size_t k = 0; k < n; ++k) suffix = suffix && t.classical_valid[k] == (k < idx);
    }
  c.expect(suffix, "classical chain invalidates exactly the blocks at or after the tamper index (n = 1..8)");
}

// ------------------------------------------------------------------ 7

void criterion7(Checks& c) {
  const auto t0 = std::chrono::steady_clock::now();
  RandomSource rng(7001);
  double worst_violation = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const DensityOperator ghz = DensityOperator::pure(ghz_state(n));
    for (int i = 0; i < 200; ++i) {
      const ThetaDraw d = sample_theta_angles(static_cast<std::size_t>(n), rng);
      const auto p = theta_outcome_distribution(ghz, d.angles);
      double bad = 0.0;
      for (std::size_t y = 0; y < p.size(); ++y)
        if ((std::popcount(y) & 1) != (d.multiple & 1)) bad += p[y];
      worst_violation = std::max(worst_violation, bad);
    }
  }
  c.expect(worst_violation <= 1e-12, "ideal GHZ, n = 2..6: max violating probability " + fmt(worst_violation));

  int honest_ok = 0, exact_ok = 0;
  double min_gap = 1.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(rng.uniform_index(3));
    const std::size_t dim = std::size_t{1} << n;
    const double w = rng.uniform(0.3, 1.0);
    const Operator mix = w * DensityOperator::pure(ghz_state(n)).matrix() + (1 - w) * random_density(dim, rng).matrix();
    const DensityOperator rho(mix);
    Network net(static_cast<std::size_t>(n), rng.next_u64());
    const PassEstimate est = estimate_pass_probability(rho, net, 1000, rng);
    const double f = ghz_fidelity(rho);
    honest_ok += f >= 2 * est.p - 1 - 3 * est.std_err ? 1 : 0;
    // Averaged over angle draws the pass probability is 1/2 + Re rho(0, 2^n - 1).
    const double p_exact = 0.5 + rho.matrix()(0, static_cast<Eigen::Index>(dim - 1)).real();
    exact_ok += f >= 2 * p_exact - 1 - kTolAlg ? 1 : 0;
    min_gap = std::min(min_gap, f - (2 * p_exact - 1));
  }
  c.expect(honest_ok == 50, "honest bound F >= 2P - 1 - 3 SE on " + std::to_string(honest_ok) + "/50 noisy states");
  std::cout << "  [info] exact-P bound F >= 2P - 1 on " << exact_ok << "/50, min F - (2P - 1) = " << fmt(min_gap)
            << "\n";

  const Operator noisy = 0.85 * DensityOperator::pure(ghz_state(4)).matrix() + 0.15 * random_density(16, rng).matrix();
  const FidelityBoundsReport rep = check_fidelity_bounds(DensityOperator(noisy), 2, 100, 2000, rng);
  std::size_t cheat_ok = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (const auto& cc : rep.cheats) {
    cheat_ok += cc.ok ? 1 : 0;
    worst_gap = std::max(worst_gap, 4 * cc.pass - 3 - rep.corrected_fidelity);
  }
  c.expect(rep.cheats.size() == 100 && cheat_ok == 100 && rep.dishonest_bound_ok,
           "dishonest bound 4P - 3 <= F' + 0.02 on " + std::to_string(cheat_ok) + "/" + std::to_string(rep.cheats.size()) +
               " cheat strategies (F' = " + fmt(rep.corrected_fidelity) + ", worst 4P - 3 - F' = " + fmt(worst_gap) + ")");
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime " + fmt(secs) + " s");
}

// ------------------------------------------------------------------ 8

void criterion8(Checks& c) {
  RandomSource rng(8001);
  for (std::size_t d : {2u, 3u, 4u}) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const DensityOperator rho = random_density(d, rng);
      const Basis f = haar_frame(d, rng);
      const GleasonResult g = gleason_reconstruct(Valuation::from_density(rho, f), f);
      worst = std::max(worst, (g.rho.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    }
    c.expect(worst <= 1e-8, "d = " + std::to_string(d) + ": max round-trip error over 50 states " + fmt(worst));
    const DensityOperator rho = random_density(d, rng);
    const double avg = (frame_average_reconstruction(rho, 10000, rng) - rho.matrix()).cwiseAbs().maxCoeff();
    c.expect(avg <= 0.02, "d = " + std::to_string(d) + ": (d+1)<rho_P> - I over 10^4 frames, max error " + fmt(avg));
  }
}

// ------------------------------------------------------------------ 9

void criterion9(Checks& c) {
  const K3Max k3 = lg_k3_max(PrecessionModel{});
  c.expect(std::abs(k3.k3_max - 1.5) <= 1e-6, "K3 max " + fmt(k3.k3_max) + " at omega tau = " + fmt(k3.tau_star));
  c.expect(std::abs(lg_k3_analytic(1.0, k3.tau_star) - lg_k3(PrecessionModel{}, k3.tau_star)) <= 1e-12,
           "sequential simulation matches 2 cos(wt) - cos(2wt) at the optimum");

  RandomSource rng(9001);
  const TemporalChshOptimum tc = temporal_chsh_optimize(PrecessionModel{}, 0.0, 1.0, rng);
  c.expect(std::abs(tc.value - 2 * kSqrt2) <= 1e-3, "temporal CHSH optimum " + fmt(tc.value));

  double k3_classical = -1e9, chsh_commuting = -1e9;
  bool entropic_ok = true;
  PrecessionModel commuting;
  commuting.axis = Eigen::Vector3d::UnitZ();
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_classical_joint(rng);
    k3_classical = std::max(k3_classical, k3_from_joint(p));
    entropic_ok = entropic_ok && !entropic_lg_check(p).violated;
    const auto mk = markov_joint(rng.uniform(), rng.uniform(), rng.uniform());
    k3_classical = std::max(k3_classical, k3_from_joint(mk));
    entropic_ok = entropic_ok && !entropic_lg_check(mk).violated;
    // Observables diagonal in the precession axis commute with the dynamics.
    auto diag = [&]() -> Operator { return (rng.bernoulli(0.5) ? 1.0 : -1.0) * (rng.bernoulli(0.5) ? pauli('Z') : pauli('I')); };
    ObservableSettings s{diag(), diag(), diag(), diag()};
    commuting.omega = rng.uniform(0.1, 3.0);
    chsh_commuting = std::max(chsh_commuting, temporal_chsh(commuting, s, 0.0, rng.uniform(0.0, 3.0)));
    const double tau = rng.uniform(0.0, 3.0);
    k3_classical = std::max(k3_classical, lg_k3(commuting, tau));
  }
  c.expect(k3_classical <= 1.0 + 1e-12, "classical joints and commuting models, 1000 instances: max K3 " + fmt(k3_classical));
  c.expect(chsh_commuting <= 2.0 + 1e-12, "commuting temporal CHSH, 1000 instances: max " + fmt(chsh_commuting));
  c.expect(entropic_ok, "entropic inequality holds on all 2000 classical joints");

  const EntropicScan scan = entropic_lg_scan(PrecessionModel{});
  c.expect(scan.violation_found, "entropic violation for the precessing qubit: margin " + fmt(scan.best_margin) +
                                     " bits at tau = " + fmt(scan.tau_star));
}

// ------------------------------------------------------------------ 10

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

void criterion10(Checks& c) {
  bool bounds = true, counts = true;
  int cases = 0;
  for (double p : {0.11, 0.3}) {
    const ProbDist src({1 - p, p});
    const double h = binary_entropy(p);
    for (double eps : {0.05, 0.1, 0.2}) {
      for (int n = 1; n <= 16; ++n) {
        const auto size = static_cast<double>(typical_set_size(n, src, eps));
        const double mass = typical_set_probability(n, src, eps);
        bounds = bounds && size <= std::exp2(n * (h + eps));
        if (mass > 1 - eps) bounds = bounds && size >= (1 - eps) * std::exp2(n * (h - eps));
        // Second route: count by number of ones.
        double by_class = 0.0;
        for (int k = 0; k <= n; ++k) {
          const double rate = -(k * std::log2(p) + (n - k) * std::log2(1 - p)) / n;
          if (std::abs(rate - h) <= eps) by_class += boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k));
        }
        counts = counts && by_class == size;
        ++cases;
      }
    }
  }
  c.expect(bounds, "typical-set cardinality bounds hold in " + std::to_string(cases) + " exhaustive cases, n <= 16");
  c.expect(counts, "exhaustive sizes equal the binomial class count");

  RandomSource rng(10001);
  const ProbDist src({0.89, 0.11});
  const CodecRoundtrip hi = typical_codec_roundtrip(TypicalCodec::from_rate(20, 0.75, src), 10000, rng);
  const CodecRoundtrip lo = typical_codec_roundtrip(TypicalCodec::from_rate(20, 0.3, src), 10000, rng);
  c.expect(hi.success_rate >= 0.9, "codec n = 20, R = 0.75: success " + fmt(hi.success_rate));
  c.expect(lo.success_rate <= 0.5, "codec n = 20, R = 0.3: success " + fmt(lo.success_rate));

  const double s = 1 / kSqrt2;
  Vec plus(2), minus(2);
  plus << s, s;
  minus << s, -s;
  const Basis x{plus, minus};
  const Basis z = computational_basis(2);
  double worst = 1e9;
  for (int i = 0; i < 1000; ++i) {
    const StateVector psi = random_state(2, rng);
    worst = std::min(worst, entropy_bits(born_distribution(psi, x)) + entropy_bits(born_distribution(psi, z)));
  }
  c.expect(worst >= entropic_uncertainty_bound(x, z) - 1e-12 && std::abs(entropic_uncertainty_bound(x, z) - 1.0) < 1e-12,
           "H(X) + H(Z) >= 1 on 1000 random qubit states (min " + fmt(worst) + ")");
}

// ------------------------------------------------------------------ 11

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

void criterion11(Checks& c) {
  const std::string cli = CHRONOQ_CLI_PATH;
  const std::vector<std::string> cmds{
      "state --kind ghz --qubits 3",
      "entangle chsh --trials 20000",
      "entangle werner --steps 6",
      "entropy codec --trials 2000",
      "entropy typical --n 10",
      "swap --pair Psi-",
      "chain demo --records 00,10,11",
      "chain contrast",
      "consensus run --nodes 4 --rounds 500 --dishonest 1",
      "consensus bounds --samples 5 --rounds 300",
      "consensus admit --state dephased",
      "game monty-teleport --strategy switch --trials 20000 --seed 7",
      "game pbr-epistemic --q 1/8 --trials 20000",
      "game qkd --protocol e91 --eve intercept --bits 200",
      "gleason roundtrip --samples 5 --frames 500",
      "lg temporal-chsh",
  };
  for (const auto& cmd : cmds) {
    const std::string full = cli + " --json " + cmd + " 2>&1";
    const std::string a = capture(full);
    const std::string b = capture(full);
    c.expect(!a.empty() && a.front() == '{' && a == b, cmd + ": " + std::to_string(a.size()) + " bytes, identical");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <criterion 1..11>\n";
    return 2;
  }
  const int n = std::atoi(argv[1]);
  void (*const table[])(Checks&) = {criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                                    criterion7, criterion8, criterion9, criterion10, criterion11};
  if (n < 1 || n > 11) {
    std::cerr << "criterion must be 1..11\n";
    return 2;
  }
  Checks c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    table[n - 1](c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  std::cout << "criterion " << n << ": " << (c.all() ? "PASS" : "FAIL") << " (" << fmt(seconds_since(t0)) << " s)\n";
  return c.all() ? 0 : 1;
}
