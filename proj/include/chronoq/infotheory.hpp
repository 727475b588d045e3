// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chronoq/qcore.hpp"

namespace chronoq {

/// Probability vector; entries >= 0 summing to 1 within kTolNorm.
class ProbDist {
 public:
  ProbDist() = default;
  explicit ProbDist(std::vector<double> p);
  const std::vector<double>& probs() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// Joint table p(x, y), rows indexed by x.
class JointDist {
 public:
  explicit JointDist(Eigen::MatrixXd table);
  const Eigen::MatrixXd& table() const { return t_; }
  ProbDist marginal_x() const;
  ProbDist marginal_y() const;

 private:
  Eigen::MatrixXd t_;
};

/// Entropy in bits, 0 log 0 = 0.
double shannon_entropy(const ProbDist& p);
/// Same, on raw non-negative weights that are assumed normalised.
double entropy_bits(const std::vector<double>& p);
/// H(p || q) in bits; +inf when p is not absolutely continuous w.r.t. q.
double relative_entropy(const ProbDist& p, const ProbDist& q);

struct DerivedEntropies {
  double h_x = 0.0;
  double h_y = 0.0;
  double joint = 0.0;
  double conditional_x_given_y = 0.0;
  double conditional_y_given_x = 0.0;
  double mutual = 0.0;
  double relative_to_product = 0.0;
};
DerivedEntropies derived_entropies(const JointDist& j);

struct TypicalResult {
  bool typical = false;
  /// The sequence contains a zero-probability symbol.
  bool zero_probability = false;
  explicit operator bool() const { return typical; }
};
TypicalResult typical_membership(const std::vector<int>& seq, const ProbDist& source, double epsilon);

/// |T(n, eps)| by exhaustive enumeration of all d^n sequences.
std::uint64_t typical_set_size(int n, const ProbDist& source, double epsilon);
/// Probability mass of T(n, eps), also by exhaustive enumeration.
double typical_set_probability(int n, const ProbDist& source, double epsilon);

/// Block codec that assigns fixed-width codewords to an explicit typical set.
///
/// Codewords are fixed-width little-endian bit strings: character i of the
/// serialised codeword is bit i (least significant first) of the codebook
/// index. Inputs outside the codebook are rejected by encode().
class TypicalCodec {
 public:
  /// Codebook T(n, eps); width = ceil(n (H + eps)).
  static TypicalCodec from_epsilon(int n, double epsilon, const ProbDist& source);
  /// Codebook of width floor(n R) holding the largest T(n, eps) that fits.
  static TypicalCodec from_rate(int n, double rate, const ProbDist& source);

  int n() const { return n_; }
  double epsilon() const { return epsilon_; }
  int width() const { return width_; }
  double rate() const { return static_cast<double>(width_) / n_; }
  const ProbDist& source() const { return source_; }
  std::size_t codebook_size() const { return codebook_.size(); }

  std::optional<std::string> encode(const std::vector<int>& seq) const;
  std::vector<int> decode(const std::string& codeword) const;

 private:
  TypicalCodec(int n, double epsilon, int width, ProbDist source, std::vector<std::uint64_t> codebook);
  std::uint64_t pack(const std::vector<int>& seq) const;
  std::vector<int> unpack(std::uint64_t key) const;

  int n_;
  double epsilon_;
  int width_;
  ProbDist source_;
  std::vector<std::uint64_t> codebook_;  // sorted packed sequences
};

inline constexpr int kMaxCodecBlock = 24;

struct CodecRoundtrip {
  double success_rate = 0.0;
  double rate_bits_per_symbol = 0.0;
  std::size_t trials = 0;
};
CodecRoundtrip typical_codec_roundtrip(const TypicalCodec& codec, std::size_t trials, RandomSource& rng);

/// Eigenvalues clamped at kTolAlg; Shannon entropy of the spectrum.
double von_neumann_entropy(const DensityOperator& rho);
/// S(A|B) = S(A,B) - S(B) for a bipartite operator with factor dims {dA, dB}.
double quantum_conditional_entropy(const DensityOperator& rho_ab, const std::vector<std::size_t>& dims);
/// log2(1/c) with c = max |<x|z>|^2.
double entropic_uncertainty_bound(const Basis& x_basis, const Basis& z_basis);

}  // namespace chronoq
