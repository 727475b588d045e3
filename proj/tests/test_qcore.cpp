// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chronoq/qcore.hpp"

namespace chronoq {
namespace {

constexpr double kS = 1.0 / std::numbers::sqrt2;

// Kronecker product written out entry by entry, independent of the library.
Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Operator kron_chain(const std::vector<Operator>& ops) {
  Operator out = Operator::Identity(1, 1);
  for (const auto& op : ops) out = kron(out, op);
  return out;
}

TEST(RandomSource, SameSeedAndStreamRepeat) {
  RandomSource a(9, 3), b(9, 3), c(9, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs = differs || x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomSource, DerivedStreamsDiffer) {
  const RandomSource root(5, 1);
  RandomSource a = root.derive(0), b = root.derive(1), a2 = root.derive(0);
  EXPECT_EQ(a.next_u64(), a2.next_u64());
  EXPECT_NE(root.derive(0).next_u64(), b.next_u64());
}

TEST(RandomSource, UniformMomentsAndRange) {
  RandomSource rng(1);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sq / n, 1.0 / 3.0, 0.005);
}

TEST(StateVector, RejectsBadNorm) {
  Vec v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, std::invalid_argument);
  EXPECT_NO_THROW(StateVector::normalized(v));
  EXPECT_THROW(StateVector::normalized(Vec::Zero(2)), std::invalid_argument);
}

TEST(StateVector, BigEndianBits) {
  EXPECT_NEAR(std::abs(StateVector::from_bits("01")[1]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(StateVector::from_bits("10")[2]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(StateVector::from_bits("110")[6]), 1.0, 1e-15);
  EXPECT_THROW(StateVector::from_bits("012"), std::invalid_argument);
}

TEST(StateVector, BellAmplitudes) {
  const Vec phi_p = bell_state(BellLabel::PhiPlus).amplitudes();
  const Vec psi_m = bell_state(BellLabel::PsiMinus).amplitudes();
  EXPECT_NEAR(std::abs(phi_p(0) - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(phi_p(3) - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi_m(1) - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi_m(2) + kS), 0.0, 1e-15);
  for (auto a : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus})
    for (auto b : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus})
      EXPECT_NEAR(overlap_sq(bell_state(a), bell_state(b)), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(StateVector, LabelRoundTrip) {
  for (auto a : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus})
    EXPECT_EQ(parse_bell_label(to_string(a)), a);
  EXPECT_THROW(parse_bell_label("Chi+"), std::invalid_argument);
}

TEST(Gates, StandardGatesAreUnitary) {
  for (const char* g : {"I", "X", "Y", "Z", "H", "S", "T", "CNOT"}) EXPECT_TRUE(is_unitary(standard_gate(g))) << g;
  EXPECT_TRUE(is_unitary(standard_gate("Rx", 0.3)));
  EXPECT_THROW(standard_gate("Rx"), std::invalid_argument);
  EXPECT_THROW(standard_gate("Q"), std::invalid_argument);
}

TEST(Gates, EmbedMatchesKronecker) {
  RandomSource rng(11);
  const Operator I = Operator::Identity(2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator u = random_unitary(2, rng);
    EXPECT_LT((embed(u, {0}, 3) - kron_chain({u, I, I})).norm(), 1e-12);
    EXPECT_LT((embed(u, {2}, 3) - kron_chain({I, I, u})).norm(), 1e-12);
    EXPECT_LT((embed(u, {1}, 3) - kron_chain({I, u, I})).norm(), 1e-12);
  }
}

TEST(Gates, CnotControlIsFirstTarget) {
  const StateVector out = apply_gate(StateVector::from_bits("100"), standard_gate("CNOT"), {0, 2});
  EXPECT_TRUE(equal_exact(out, StateVector::from_bits("101")));
  const StateVector out2 = apply_gate(StateVector::from_bits("001"), standard_gate("CNOT"), {2, 0});
  EXPECT_TRUE(equal_exact(out2, StateVector::from_bits("101")));
}

TEST(Gates, ApplyGateMatchesDenseProduct) {
  RandomSource rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi = random_state(16, rng);
    const Operator u = random_unitary(4, rng);
    const StateVector out = apply_gate(psi, u, {1, 2});
    const Vec dense = kron_chain({Operator::Identity(2, 2), u, Operator::Identity(2, 2)}) * psi.amplitudes();
    EXPECT_LT((out.amplitudes() - dense).norm(), 1e-12);
  }
}

TEST(Gates, RejectsRepeatedOrOutOfRangeTargets) {
  const StateVector psi = StateVector::from_bits("00");
  EXPECT_THROW(apply_gate(psi, standard_gate("CNOT"), {0, 0}), std::invalid_argument);
  EXPECT_THROW(apply_gate(psi, pauli('X'), {2}), std::out_of_range);
}

TEST(Density, ValidatesInput) {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityOperator{m});
  m(0, 1) = 0.2;
  EXPECT_THROW(DensityOperator{m}, std::invalid_argument);  // not Hermitian
  Operator neg = Operator::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator{neg}, std::invalid_argument);
}

TEST(Density, RandomDensityIsValid) {
  RandomSource rng(13);
  for (std::size_t d : {2u, 3u, 5u}) {
    for (int i = 0; i < 20; ++i) {
      const DensityOperator rho = random_density(d, rng);
      EXPECT_TRUE(is_psd(rho.matrix()));
      EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
      EXPECT_LE(purity(rho), 1.0 + 1e-12);
      EXPECT_GE(purity(rho), 1.0 / static_cast<double>(d) - 1e-12);
    }
  }
}

// Independent partial trace: explicit sum over the traced index.
Operator trace_out_second(const Operator& m, int da, int db) {
  Operator out = Operator::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}
Operator trace_out_first(const Operator& m, int da, int db) {
  Operator out = Operator::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

TEST(Density, PartialTraceMatchesExplicitSum) {
  RandomSource rng(14);
  for (int i = 0; i < 10; ++i) {
    const DensityOperator rho = random_density(6, rng);
    EXPECT_LT((partial_trace(rho, {2, 3}, {0}).matrix() - trace_out_second(rho.matrix(), 2, 3)).norm(), 1e-12);
    EXPECT_LT((partial_trace(rho, {2, 3}, {1}).matrix() - trace_out_first(rho.matrix(), 2, 3)).norm(), 1e-12);
  }
}

TEST(Density, ReducedBellIsMaximallyMixed) {
  const DensityOperator rho = DensityOperator::pure(bell_state(BellLabel::PsiMinus));
  const DensityOperator a = partial_trace(rho, {2, 2}, {0});
  EXPECT_LT((a.matrix() - 0.5 * Operator::Identity(2, 2)).norm(), 1e-12);
  EXPECT_NEAR(purity(a), 0.5, 1e-12);
}

TEST(Measurement, BornRuleSumsToOne) {
  RandomSource rng(15);
  for (int i = 0; i < 20; ++i) {
    const StateVector psi = random_state(8, rng);
    const auto p = born_distribution(psi, computational_basis(8));
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      s += p[k];
      EXPECT_NEAR(p[k], std::norm(psi[k]), 1e-14);
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Measurement, SampledFrequenciesFollowBorn) {
  RandomSource rng(16);
  Vec v(2);
  v << std::sqrt(0.3), std::sqrt(0.7);
  const StateVector psi(v);
  const int n = 50000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += static_cast<int>(measure(psi, computational_basis(2), rng).index);
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.7, 4.0 * std::sqrt(0.21 / n));
}

TEST(Measurement, RejectsIncompleteBasis) {
  const Basis partial{StateVector::basis(2, 0).amplitudes()};
  RandomSource rng(1);
  EXPECT_THROW(measure(StateVector::basis(2, 0), partial, rng), std::invalid_argument);
}

TEST(Measurement, RemoveQubitCollapsesGhz) {
  const StateVector ghz = ghz_state(3);
  for (int q = 0; q < 3; ++q) {
    for (int outcome = 0; outcome < 2; ++outcome) {
      const QubitOutcome o = project_and_remove(ghz, q, computational_basis(2), outcome);
      EXPECT_NEAR(o.probability, 0.5, 1e-12);
      EXPECT_TRUE(equal_up_to_phase(o.remaining, StateVector::from_bits(outcome ? "11" : "00")));
    }
  }
}

TEST(Measurement, ExpectationIsReal) {
  RandomSource rng(17);
  const DensityOperator rho = random_density(2, rng);
  const double x = expectation(rho, pauli('X'));
  EXPECT_NEAR(x, 2.0 * rho.matrix()(0, 1).real(), 1e-12);
}

TEST(NoCloning, OrthogonalPairClonesNonOrthogonalDoesNot) {
  const CloningFit ortho = fit_cloner(StateVector::basis(2, 0), StateVector::basis(2, 1));
  EXPECT_NEAR(ortho.fidelity_a, 1.0, 1e-12);
  EXPECT_NEAR(ortho.fidelity_b, 1.0, 1e-12);
  EXPECT_TRUE(is_unitary(ortho.unitary));
  Vec plus(2);
  plus << kS, kS;
  const CloningFit fit = fit_cloner(StateVector::basis(2, 0), StateVector(plus));
  EXPECT_TRUE(is_unitary(fit.unitary));
  EXPECT_LT(std::min(fit.fidelity_a, fit.fidelity_b), 1.0 - 1e-3);
}

TEST(Limits, RegisterSizeCap) {
  EXPECT_THROW(ghz_state(kMaxQubits + 1), std::length_error);
}

}  // namespace
}  // namespace chronoq
