// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include "chronoq/temporal.hpp"

namespace chronoq {
namespace {

const BellLabel kLabels[4] = {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

// Outer pair after projecting the middle qubits of |pair>|pair> onto a Bell
// state, by direct contraction of the four-qubit amplitudes.
StateVector outer_by_contraction(BellLabel pair, BellLabel middle) {
  const Vec p = bell_state(pair).amplitudes();
  const Vec m = bell_state(middle).amplitudes();
  Vec out = Vec::Zero(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + d) += std::conj(m(2 * b + c)) * p(2 * a + b) * p(2 * c + d);
  return StateVector::normalized(out);
}

TEST(Register, CreateDelayMeasureLog) {
  TemporalRegister reg;
  RandomSource rng(41);
  auto [a, b] = create_pair(reg, BellLabel::PhiPlus, "a", "b", 0);
  EXPECT_EQ(reg.live_modes().size(), 2u);
  delay(reg, b, 2);
  EXPECT_EQ(reg.current(b).time_step, 2);
  const int ya = measure_mode(reg, a, computational_basis(2), rng);
  EXPECT_TRUE(reg.is_consumed(a));
  EXPECT_EQ(reg.live_modes().size(), 1u);
  // Phi+ forces b to agree.
  EXPECT_NEAR(std::norm(reg.state()[static_cast<std::size_t>(ya)]), 1.0, 1e-12);
  ASSERT_EQ(reg.events().size(), 3u);
  EXPECT_EQ(reg.events()[0].kind, EventKind::Create);
  EXPECT_EQ(reg.events()[1].kind, EventKind::Delay);
  EXPECT_EQ(reg.events()[2].kind, EventKind::Measure);
}

TEST(Register, EventsStayTimeOrdered) {
  TemporalRegister reg;
  auto [a, b] = create_pair(reg, BellLabel::PhiPlus, "a", "b", 3);
  (void)a;
  (void)b;
  EXPECT_THROW(create_pair(reg, BellLabel::PhiPlus, "c", "d", 1), std::logic_error);
  EXPECT_THROW(delay(reg, b, 0), std::invalid_argument);
}

TEST(Register, ConsumedModesAreUnreachable) {
  TemporalRegister reg;
  RandomSource rng(42);
  auto [a, b] = create_pair(reg, BellLabel::PsiMinus, "a", "b", 0);
  measure_mode(reg, a, computational_basis(2), rng);
  EXPECT_THROW(reg.qubit_of(a), std::logic_error);
  EXPECT_THROW(measure_mode(reg, a, computational_basis(2), rng), std::logic_error);
  EXPECT_NO_THROW(reg.qubit_of(b));
}

TEST(Register, EventLogIsJsonLines) {
  TemporalRegister reg;
  create_pair(reg, BellLabel::PhiPlus, "a", "b", 0);
  const std::string log = reg.event_log_jsonl();
  EXPECT_NE(log.find("\"event\":\"create\""), std::string::npos);
  EXPECT_EQ(log.back(), '\n');
}

TEST(Swap, OuterStateMatchesContraction) {
  for (BellLabel pair : kLabels)
    for (BellLabel mid : kLabels) {
      const StateVector got = swap_outer_state(pair, mid);
      EXPECT_TRUE(equal_up_to_phase(got, outer_by_contraction(pair, mid), 1e-12));
    }
}

TEST(Swap, SingletPairsGiveMiddleLabel) {
  for (BellLabel mid : kLabels)
    EXPECT_NEAR(overlap_sq(swap_outer_state(BellLabel::PsiMinus, mid), bell_state(mid)), 1.0, 1e-12);
}

TEST(Swap, MiddleOutcomesUniform) {
  RandomSource rng(43);
  std::array<int, 4> counts{};
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const TemporalSwapRun run = temporal_swap(BellLabel::PsiMinus, computational_basis(2), computational_basis(2), rng);
    EXPECT_NEAR(run.middle.probability, 0.25, 1e-12);
    ++counts[static_cast<std::size_t>(run.middle.label)];
  }
  for (int c : counts) EXPECT_NEAR(c / static_cast<double>(n), 0.25, 4.0 * std::sqrt(0.1875 / n));
}

TEST(Swap, OuterCorrelationsSurviveNonCoexistence) {
  // Z outcomes of photons 1 and 4 agree for Phi outcomes and disagree for Psi.
  RandomSource rng(44);
  for (int i = 0; i < 400; ++i) {
    const TemporalSwapRun run = temporal_swap(BellLabel::PsiMinus, computational_basis(2), computational_basis(2), rng);
    const bool phi = run.middle.label == BellLabel::PhiPlus || run.middle.label == BellLabel::PhiMinus;
    EXPECT_EQ(run.first_outcome == run.last_outcome, phi);
    EXPECT_TRUE(consumed_before_created(run.reg, run.photon1, run.photon4));
    EXPECT_FALSE(consumed_before_created(run.reg, run.photon4, run.photon1));
  }
}

TEST(Swap, BellProjectRejectsImpossibleLabel) {
  TemporalRegister reg;
  auto [a, b] = create_pair(reg, BellLabel::PhiPlus, "a", "b", 0);
  EXPECT_THROW(bell_project(reg, a, b, BellLabel::PsiMinus), std::runtime_error);
}

TEST(Fusion, PhiPlusPairsFuseToGhz) {
  for (int pairs = 1; pairs <= 4; ++pairs) {
    TemporalRegister reg;
    RandomSource rng(45 + static_cast<std::uint64_t>(pairs));
    ModeId last = create_pair(reg, BellLabel::PhiPlus, "a", "b", 0).second;
    for (int k = 1; k < pairs; ++k) {
      const auto [first, second] = create_pair(reg, BellLabel::PhiPlus, "a", "b", k);
      EXPECT_NEAR(fusion_probability(reg, last, first), 0.5, 1e-12);
      // Retry on a copy until the post-selection succeeds.
      TemporalRegister trial = reg;
      while (!pbs_fuse(trial, last, first, rng)) trial = reg;
      reg = trial;
      last = second;
    }
    EXPECT_TRUE(reg.valid());
    EXPECT_NEAR(overlap_sq(reg.state(), ghz_state(2 * pairs)), 1.0, 1e-12);
    const DensityOperator rec = ghz_density_recursive(DensityOperator::pure(bell_state(BellLabel::PhiPlus)), pairs);
    EXPECT_LT((rec.matrix() - DensityOperator::pure(ghz_state(2 * pairs)).matrix()).norm(), 1e-12);
  }
}

TEST(Fusion, MixedLabelsMatchPatternClosedForm) {
  // Phi+ then Psi+: the parity projection keeps |00>|01> and |11>|10>.
  TemporalRegister reg;
  RandomSource rng(46);
  auto p = create_pair(reg, BellLabel::PhiPlus, "a", "b", 0);
  auto q = create_pair(reg, BellLabel::PsiPlus, "a", "b", 1);
  TemporalRegister trial = reg;
  while (!pbs_fuse(trial, p.second, q.first, rng)) trial = reg;
  EXPECT_NEAR(overlap_sq(trial.state(), ghz_from_pattern("0001")), 1.0, 1e-12);
}

TEST(Fusion, FailureInvalidatesRegister) {
  TemporalRegister reg;
  RandomSource rng(47);
  auto p = create_pair(reg, BellLabel::PhiPlus, "a", "b", 0);
  auto q = create_pair(reg, BellLabel::PhiPlus, "a", "b", 1);
  bool saw_failure = false;
  for (int i = 0; i < 64 && !saw_failure; ++i) {
    TemporalRegister trial = reg;
    if (!pbs_fuse(trial, p.second, q.first, rng)) {
      saw_failure = true;
      EXPECT_FALSE(trial.valid());
    }
  }
  EXPECT_TRUE(saw_failure);
}

TEST(Fusion, RecursiveDensityIsNormalised) {
  RandomSource rng(48);
  for (int pairs = 1; pairs <= 3; ++pairs) {
    const DensityOperator pair = random_density(4, rng);
    const DensityOperator out = ghz_density_recursive(pair, pairs);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_psd(out.matrix()));
  }
}

}  // namespace
}  // namespace chronoq
