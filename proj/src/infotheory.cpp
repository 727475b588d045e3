// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace chronoq {

ProbDist::ProbDist(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("ProbDist: empty");
  double total = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("ProbDist: negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kTolNorm) throw std::invalid_argument("ProbDist: entries do not sum to 1");
}

JointDist::JointDist(Eigen::MatrixXd table) : t_(std::move(table)) {
  if (t_.size() == 0) throw std::invalid_argument("JointDist: empty table");
  if (!t_.allFinite() || t_.minCoeff() < 0.0) throw std::invalid_argument("JointDist: negative or non-finite entry");
  if (std::abs(t_.sum() - 1.0) > kTolNorm) throw std::invalid_argument("JointDist: entries do not sum to 1");
}

ProbDist JointDist::marginal_x() const {
  Eigen::VectorXd m = t_.rowwise().sum();
  return ProbDist(std::vector<double>(m.data(), m.data() + m.size()));
}

ProbDist JointDist::marginal_y() const {
  Eigen::VectorXd m = t_.colwise().sum().transpose();
  return ProbDist(std::vector<double>(m.data(), m.data() + m.size()));
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return std::max(0.0, h);
}

double shannon_entropy(const ProbDist& p) { return entropy_bits(p.probs()); }

double relative_entropy(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

DerivedEntropies derived_entropies(const JointDist& j) {
  const Eigen::MatrixXd& t = j.table();
  const ProbDist px = j.marginal_x();
  const ProbDist py = j.marginal_y();
  std::vector<double> flat(t.data(), t.data() + t.size());
  std::vector<double> prod;
  prod.reserve(flat.size());
  for (Eigen::Index c = 0; c < t.cols(); ++c)
    for (Eigen::Index r = 0; r < t.rows(); ++r) prod.push_back(px[static_cast<std::size_t>(r)] * py[static_cast<std::size_t>(c)]);

  DerivedEntropies e;
  e.h_x = shannon_entropy(px);
  e.h_y = shannon_entropy(py);
  e.joint = entropy_bits(flat);
  e.conditional_x_given_y = e.joint - e.h_y;
  e.conditional_y_given_x = e.joint - e.h_x;
  e.mutual = e.h_x + e.h_y - e.joint;
  double rel = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i)
    if (flat[i] > 0.0) rel += flat[i] * std::log2(flat[i] / prod[i]);
  e.relative_to_product = rel;
  return e;
}

TypicalResult typical_membership(const std::vector<int>& seq, const ProbDist& source, double epsilon) {
  if (seq.empty()) throw std::invalid_argument("typical_membership: empty sequence");
  if (!(epsilon > 0.0)) throw std::invalid_argument("typical_membership: epsilon must be positive");
  double surprisal = 0.0;
  for (int s : seq) {
    if (s < 0 || static_cast<std::size_t>(s) >= source.size()) throw std::out_of_range("typical_membership: symbol outside alphabet");
    const double p = source[static_cast<std::size_t>(s)];
    if (p <= 0.0) return {false, true};
    surprisal -= std::log2(p);
  }
  const double rate = surprisal / static_cast<double>(seq.size());
  return {std::abs(rate - shannon_entropy(source)) <= epsilon, false};
}

namespace {

// Composition classes of length-n sequences: symbol counts, class size and the
// per-symbol surprisal shared by every member.
struct SequenceClass {
  std::vector<int> counts;
  double size;
  double surprisal_rate;
  double probability;  // probability of one member
};

void enumerate_classes(int n, const ProbDist& src, std::vector<int>& counts, std::size_t pos, int remaining,
                       std::vector<SequenceClass>& out) {
  if (pos + 1 == src.size()) {
    counts[pos] = remaining;
    double log_size = std::lgamma(n + 1.0);
    double log2_p = 0.0;
    bool possible = true;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      log_size -= std::lgamma(counts[i] + 1.0);
      if (counts[i] > 0) {
        if (src[i] <= 0.0) possible = false;
        else log2_p += counts[i] * std::log2(src[i]);
      }
    }
    if (possible) out.push_back({counts, std::round(std::exp(log_size)), -log2_p / n, std::exp2(log2_p)});
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[pos] = c;
    enumerate_classes(n, src, counts, pos + 1, remaining - c, out);
  }
}

std::vector<SequenceClass> sequence_classes(int n, const ProbDist& src) {
  std::vector<int> counts(src.size(), 0);
  std::vector<SequenceClass> out;
  enumerate_classes(n, src, counts, 0, n, out);
  return out;
}

void check_block(int n, const ProbDist& src) {
  if (n < 1) throw std::invalid_argument("block length must be positive");
  const double states = std::pow(static_cast<double>(src.size()), n);
  if (src.size() < 2 || states > std::exp2(kMaxCodecBlock)) {
    throw std::invalid_argument("block too large for exhaustive enumeration");
  }
}

// Walks every sequence of length n over the alphabet, reporting (packed key, surprisal rate).
template <typename F>
void for_each_sequence(int n, const ProbDist& src, F&& f) {
  const std::size_t d = src.size();
  std::vector<double> neglog(d);
  for (std::size_t i = 0; i < d; ++i) neglog[i] = src[i] > 0.0 ? -std::log2(src[i]) : std::numeric_limits<double>::infinity();
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  for (std::uint64_t key = 0; key < total; ++key) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += neglog[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
    f(key, s / n);
    // Increment the base-d counter, last position least significant.
    for (int i = n - 1; i >= 0; --i) {
      auto& dgt = digits[static_cast<std::size_t>(i)];
      if (++dgt < static_cast<int>(d)) break;
      dgt = 0;
    }
  }
}

}  // namespace

std::uint64_t typical_set_size(int n, const ProbDist& source, double epsilon) {
  check_block(n, source);
  const double h = shannon_entropy(source);
  std::uint64_t count = 0;
  for_each_sequence(n, source, [&](std::uint64_t, double rate) {
    if (std::isfinite(rate) && std::abs(rate - h) <= epsilon) ++count;
  });
  return count;
}

double typical_set_probability(int n, const ProbDist& source, double epsilon) {
  check_block(n, source);
  const double h = shannon_entropy(source);
  double mass = 0.0;
  for_each_sequence(n, source, [&](std::uint64_t, double rate) {
    if (std::isfinite(rate) && std::abs(rate - h) <= epsilon) mass += std::exp2(-rate * n);
  });
  return mass;
}

TypicalCodec::TypicalCodec(int n, double epsilon, int width, ProbDist source, std::vector<std::uint64_t> codebook)
    : n_(n), epsilon_(epsilon), width_(width), source_(std::move(source)), codebook_(std::move(codebook)) {}

namespace {

std::vector<std::uint64_t> collect_typical(int n, const ProbDist& source, double epsilon) {
  const double h = shannon_entropy(source);
  std::vector<std::uint64_t> book;
  for_each_sequence(n, source, [&](std::uint64_t key, double rate) {
    if (std::isfinite(rate) && std::abs(rate - h) <= epsilon) book.push_back(key);
  });
  return book;  // keys arrive in increasing order
}

}  // namespace

TypicalCodec TypicalCodec::from_epsilon(int n, double epsilon, const ProbDist& source) {
  check_block(n, source);
  if (!(epsilon > 0.0)) throw std::invalid_argument("TypicalCodec: epsilon must be positive");
  const double h = shannon_entropy(source);
  const int width = static_cast<int>(std::ceil(n * (h + epsilon) - 1e-12));
  if (width > 63) throw std::invalid_argument("TypicalCodec: codeword width exceeds 63 bits");
  auto book = collect_typical(n, source, epsilon);
  if (width < 63 && book.size() > (std::uint64_t{1} << width)) throw std::logic_error("TypicalCodec: typical set exceeds codeword space");
  return TypicalCodec(n, epsilon, width, source, std::move(book));
}

TypicalCodec TypicalCodec::from_rate(int n, double rate, const ProbDist& source) {
  check_block(n, source);
  if (!(rate > 0.0)) throw std::invalid_argument("TypicalCodec: rate must be positive");
  const int width = static_cast<int>(std::floor(n * rate + 1e-12));
  if (width > 63) throw std::invalid_argument("TypicalCodec: codeword width exceeds 63 bits");
  const double capacity = std::exp2(width);
  const double h = shannon_entropy(source);

  // Group classes by deviation |rate - H| so ties enter or leave together.
  std::map<double, double> size_by_dev;
  for (const auto& c : sequence_classes(n, source)) {
    const double dev = std::abs(c.surprisal_rate - h);
    // Merge deviations that differ only by rounding.
    auto it = size_by_dev.lower_bound(dev - 1e-12);
    if (it != size_by_dev.end() && std::abs(it->first - dev) <= 1e-12) it->second += c.size;
    else size_by_dev.emplace(dev, c.size);
  }
  double used = 0.0;
  double last_in = -1.0;
  double first_out = -1.0;
  for (const auto& [dev, size] : size_by_dev) {
    if (used + size <= capacity) {
      used += size;
      last_in = dev;
    } else {
      first_out = dev;
      break;
    }
  }
  double eps;
  if (last_in < 0.0) {
    // Not even the most typical class fits: empty codebook.
    eps = first_out / 2.0;
    return TypicalCodec(n, eps, width, source, {});
  }
  if (first_out < 0.0) eps = last_in + 1e-6;
  else eps = 0.5 * (last_in + first_out);
  if (!(eps > 0.0)) eps = 1e-12;
  return TypicalCodec(n, eps, width, source, collect_typical(n, source, eps));
}

std::uint64_t TypicalCodec::pack(const std::vector<int>& seq) const {
  if (static_cast<int>(seq.size()) != n_) throw std::invalid_argument("TypicalCodec: wrong block length");
  std::uint64_t key = 0;
  for (int s : seq) {
    if (s < 0 || static_cast<std::size_t>(s) >= source_.size()) throw std::out_of_range("TypicalCodec: symbol outside alphabet");
    key = key * source_.size() + static_cast<std::uint64_t>(s);
  }
  return key;
}

std::vector<int> TypicalCodec::unpack(std::uint64_t key) const {
  std::vector<int> seq(static_cast<std::size_t>(n_));
  for (int i = n_ - 1; i >= 0; --i) {
    seq[static_cast<std::size_t>(i)] = static_cast<int>(key % source_.size());
    key /= source_.size();
  }
  return seq;
}

std::optional<std::string> TypicalCodec::encode(const std::vector<int>& seq) const {
  const std::uint64_t key = pack(seq);
  auto it = std::lower_bound(codebook_.begin(), codebook_.end(), key);
  if (it == codebook_.end() || *it != key) return std::nullopt;
  std::uint64_t index = static_cast<std::uint64_t>(it - codebook_.begin());
  std::string word(static_cast<std::size_t>(width_), '0');
  for (int b = 0; b < width_; ++b) word[static_cast<std::size_t>(b)] = ((index >> b) & 1U) ? '1' : '0';
  return word;
}

std::vector<int> TypicalCodec::decode(const std::string& codeword) const {
  if (static_cast<int>(codeword.size()) != width_) throw std::invalid_argument("TypicalCodec: codeword has wrong width");
  std::uint64_t index = 0;
  for (int b = 0; b < width_; ++b) {
    const char c = codeword[static_cast<std::size_t>(b)];
    if (c != '0' && c != '1') throw std::invalid_argument("TypicalCodec: codeword must be a 0/1 string");
    if (c == '1') index |= std::uint64_t{1} << b;
  }
  if (index >= codebook_.size()) throw std::out_of_range("TypicalCodec: codeword not in codebook");
  return unpack(codebook_[index]);
}

CodecRoundtrip typical_codec_roundtrip(const TypicalCodec& codec, std::size_t trials, RandomSource& rng) {
  if (trials == 0) throw std::invalid_argument("typical_codec_roundtrip: trials must be positive");
  const auto& p = codec.source().probs();
  std::size_t ok = 0;
  std::vector<int> seq(static_cast<std::size_t>(codec.n()));
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& s : seq) s = static_cast<int>(rng.categorical(p.data(), p.size()));
    const auto word = codec.encode(seq);
    if (word && codec.decode(*word) == seq) ++ok;
  }
  return {static_cast<double>(ok) / static_cast<double>(trials), codec.rate(), trials};
}

double von_neumann_entropy(const DensityOperator& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho.matrix());
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) p.push_back(ev(i) < kTolAlg ? 0.0 : ev(i));
  return entropy_bits(p);
}

double quantum_conditional_entropy(const DensityOperator& rho_ab, const std::vector<std::size_t>& dims) {
  if (dims.size() != 2) throw std::invalid_argument("quantum_conditional_entropy: expected two factor dimensions");
  const DensityOperator rho_b = partial_trace(rho_ab, dims, {1});
  return von_neumann_entropy(rho_ab) - von_neumann_entropy(rho_b);
}

double entropic_uncertainty_bound(const Basis& x_basis, const Basis& z_basis) {
  if (x_basis.empty()) throw std::invalid_argument("entropic_uncertainty_bound: empty basis");
  const std::size_t d = static_cast<std::size_t>(x_basis.front().size());
  require_orthonormal_basis(x_basis, d);
  require_orthonormal_basis(z_basis, d);
  double c = 0.0;
  for (const auto& x : x_basis)
    for (const auto& z : z_basis) c = std::max(c, std::norm(x.dot(z)));
  return std::max(0.0, -std::log2(c));
}

}  // namespace chronoq
