// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chronoq {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

void check_dim_budget(std::size_t dim) {
  if (dim > (std::size_t{1} << kMaxQubits)) {
    throw std::length_error("dimension exceeds the configured register limit of 2^" +
                            std::to_string(kMaxQubits));
  }
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector() : amps_(Vec::Ones(1)) {}

StateVector::StateVector(Vec amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("StateVector: empty amplitude vector");
  if (!amps_.allFinite()) throw std::invalid_argument("StateVector: non-finite amplitude");
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > kTolNorm) {
    throw std::invalid_argument("StateVector: squared norm " + std::to_string(n2) + " is not 1");
  }
}

StateVector StateVector::normalized(const Vec& amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("StateVector::normalized: zero vector");
  return StateVector(amplitudes / n);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("StateVector::basis: index out of range");
  check_dim_budget(dim);
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(v);
}

StateVector StateVector::from_bits(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("from_bits: empty string");
  if (bits.size() > static_cast<std::size_t>(kMaxQubits)) throw std::length_error("from_bits: too many qubits");
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("from_bits: expected 0/1 characters");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return basis(std::size_t{1} << bits.size(), index);
}

int StateVector::num_qubits() const {
  if (!is_power_of_two(dim())) throw std::logic_error("StateVector: dimension is not a power of two");
  return log2_exact(dim());
}

// ----------------------------------------------------------- DensityOperator

DensityOperator::DensityOperator() : m_(Operator::Ones(1, 1)) {}

DensityOperator::DensityOperator(Operator m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw std::invalid_argument("DensityOperator: not square");
  if (!m_.allFinite()) throw std::invalid_argument("DensityOperator: non-finite entry");
  if (!is_hermitian(m_)) throw std::invalid_argument("DensityOperator: not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > kTolAlg) throw std::invalid_argument("DensityOperator: trace is not 1");
  if (!is_psd(m_)) throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  const Vec& v = psi.amplitudes();
  Operator m = v * v.adjoint();
  return DensityOperator(0.5 * (m + m.adjoint()));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  check_dim_budget(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityOperator(Operator::Identity(d, d) / static_cast<double>(dim));
}

DensityOperator DensityOperator::from_unnormalized(const Operator& m) {
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw std::invalid_argument("from_unnormalized: non-positive trace");
  Operator h = 0.5 * (m + m.adjoint()) / tr;
  return DensityOperator(h);
}

// ------------------------------------------------------------------ labels

std::string to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "Phi+";
    case BellLabel::PhiMinus: return "Phi-";
    case BellLabel::PsiPlus: return "Psi+";
    case BellLabel::PsiMinus: return "Psi-";
  }
  return "?";
}

BellLabel parse_bell_label(std::string_view text) {
  if (text == "Phi+" || text == "phi+") return BellLabel::PhiPlus;
  if (text == "Phi-" || text == "phi-") return BellLabel::PhiMinus;
  if (text == "Psi+" || text == "psi+") return BellLabel::PsiPlus;
  if (text == "Psi-" || text == "psi-") return BellLabel::PsiMinus;
  throw std::invalid_argument("unknown Bell label: " + std::string(text));
}

// ------------------------------------------------------------- comparisons

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

double overlap_sq(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  const cplx ov = inner(a, b);
  if (std::abs(ov) < 0.5) return false;
  const cplx phase = ov / std::abs(ov);
  return (a.amplitudes() * phase - b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

bool equal_exact(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------- products

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  check_dim_budget(a.dim() * b.dim());
  const Vec& x = a.amplitudes();
  const Vec& y = b.amplitudes();
  Vec out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return StateVector::normalized(out);
}

Operator tensor_product(const Operator& a, const Operator& b) {
  check_dim_budget(static_cast<std::size_t>(a.rows() * b.rows()));
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_unnormalized(tensor_product(a.matrix(), b.matrix()));
}

Operator adjoint(const Operator& m) { return m.adjoint(); }

// ------------------------------------------------------------------- gates

Operator pauli(char axis) {
  Operator m(2, 2);
  switch (axis) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': case 'x': m << 0, 1, 1, 0; break;
    case 'Y': case 'y': m << 0, -kI, kI, 0; break;
    case 'Z': case 'z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("pauli: unknown axis ") + axis);
  }
  return m;
}

Operator standard_gate(std::string_view name, std::optional<double> angle) {
  const bool rotation = name == "Rx" || name == "Ry" || name == "Rz";
  if (rotation && !angle) throw std::invalid_argument("standard_gate: rotation requires an angle");
  if (!rotation && angle) throw std::invalid_argument("standard_gate: angle given for fixed gate " + std::string(name));
  const double s2 = 1.0 / std::numbers::sqrt2;
  Operator m(2, 2);
  if (name == "I") return pauli('I');
  if (name == "X") return pauli('X');
  if (name == "Y") return pauli('Y');
  if (name == "Z") return pauli('Z');
  if (name == "H") {
    m << s2, s2, s2, -s2;
    return m;
  }
  if (name == "S") {
    m << 1, 0, 0, kI;
    return m;
  }
  if (name == "T") {
    m << 1, 0, 0, std::exp(kI * (std::numbers::pi / 4.0));
    return m;
  }
  if (name == "CNOT") {
    Operator c = Operator::Zero(4, 4);
    c(0, 0) = 1;
    c(1, 1) = 1;
    c(2, 3) = 1;
    c(3, 2) = 1;
    return c;
  }
  if (rotation) {
    const double h = *angle / 2.0;
    const char axis = name[1];
    return std::cos(h) * pauli('I') - kI * std::sin(h) * pauli(axis);
  }
  throw std::invalid_argument("standard_gate: unknown gate " + std::string(name));
}

StateVector bell_state(BellLabel label) {
  const double s2 = 1.0 / std::numbers::sqrt2;
  Vec v = Vec::Zero(4);
  switch (label) {
    case BellLabel::PhiPlus: v << s2, 0, 0, s2; break;
    case BellLabel::PhiMinus: v << s2, 0, 0, -s2; break;
    case BellLabel::PsiPlus: v << 0, s2, s2, 0; break;
    case BellLabel::PsiMinus: v << 0, s2, -s2, 0; break;
  }
  return StateVector(v);
}

StateVector ghz_state(int n) {
  if (n < 2) throw std::invalid_argument("ghz_state: n must be at least 2");
  if (n > kMaxQubits) throw std::length_error("ghz_state: n exceeds the register limit");
  const std::size_t dim = std::size_t{1} << n;
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v(0) = 1.0 / std::numbers::sqrt2;
  v(static_cast<Eigen::Index>(dim - 1)) = 1.0 / std::numbers::sqrt2;
  return StateVector(v);
}

// -------------------------------------------------------------- predicates

bool is_unitary(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Operator d = m.adjoint() * m - Operator::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& m) {
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return hermitian_eigenvalues(m).minCoeff() >= -tol;
}

// ------------------------------------------------------------- measurement

Basis computational_basis(std::size_t dim) {
  Basis b;
  b.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) b.push_back(StateVector::basis(dim, i).amplitudes());
  return b;
}

void require_orthonormal_basis(const Basis& basis, std::size_t dim) {
  if (basis.size() != dim) throw std::invalid_argument("basis: wrong number of vectors (incomplete)");
  for (std::size_t i = 0; i < dim; ++i) {
    if (static_cast<std::size_t>(basis[i].size()) != dim) throw std::invalid_argument("basis: vector dimension mismatch");
    for (std::size_t j = i; j < dim; ++j) {
      const cplx ip = basis[i].dot(basis[j]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - expect) > kTolAlg) throw std::invalid_argument("basis: vectors are not orthonormal");
    }
  }
}

namespace {

std::vector<double> settle_distribution(std::vector<double> p) {
  double total = 0.0;
  for (double& x : p) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (!(total > 0.0) || std::abs(total - 1.0) > kDriftTol) {
    throw std::runtime_error("measurement: degenerate outcome distribution (total " + std::to_string(total) + ")");
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

std::vector<double> born_distribution(const StateVector& state, const Basis& basis) {
  require_orthonormal_basis(basis, state.dim());
  std::vector<double> p(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) p[i] = std::norm(basis[i].dot(state.amplitudes()));
  return p;
}

std::vector<double> born_distribution(const DensityOperator& rho, const Basis& basis) {
  require_orthonormal_basis(basis, rho.dim());
  std::vector<double> p(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    p[i] = std::max(0.0, basis[i].dot(rho.matrix() * basis[i]).real());
  }
  return p;
}

MeasurementOutcome measure(const StateVector& state, const Basis& basis, RandomSource& rng) {
  const std::vector<double> p = settle_distribution(born_distribution(state, basis));
  const std::size_t k = rng.categorical(p.data(), p.size());
  const cplx amp = basis[k].dot(state.amplitudes());
  return {k, p[k], StateVector::normalized(basis[k] * (amp / std::abs(amp)))};
}

MixedMeasurementOutcome measure(const DensityOperator& rho, const Basis& basis, RandomSource& rng) {
  const std::vector<double> p = settle_distribution(born_distribution(rho, basis));
  const std::size_t k = rng.categorical(p.data(), p.size());
  return {k, p[k], DensityOperator::pure(StateVector::normalized(basis[k]))};
}

// ---------------------------------------------------------- register helpers

Vec apply_operator(const Vec& amps, const Operator& gate, const std::vector<int>& targets, int num_qubits) {
  const int k = static_cast<int>(targets.size());
  const Eigen::Index block = Eigen::Index{1} << k;
  if (gate.rows() != block || gate.cols() != block) throw std::invalid_argument("apply: gate size does not match targets");
  if (amps.size() != (Eigen::Index{1} << num_qubits)) throw std::invalid_argument("apply: register size mismatch");
  std::vector<std::size_t> masks(static_cast<std::size_t>(k));
  std::size_t target_mask = 0;
  for (int j = 0; j < k; ++j) {
    const int q = targets[static_cast<std::size_t>(j)];
    if (q < 0 || q >= num_qubits) throw std::out_of_range("apply: target qubit out of range");
    masks[static_cast<std::size_t>(j)] = std::size_t{1} << (num_qubits - 1 - q);
    if (target_mask & masks[static_cast<std::size_t>(j)]) throw std::invalid_argument("apply: repeated target");
    target_mask |= masks[static_cast<std::size_t>(j)];
  }
  std::vector<std::size_t> offsets(static_cast<std::size_t>(block));
  for (Eigen::Index s = 0; s < block; ++s) {
    std::size_t off = 0;
    for (int j = 0; j < k; ++j)
      if (s & (Eigen::Index{1} << (k - 1 - j))) off |= masks[static_cast<std::size_t>(j)];
    offsets[static_cast<std::size_t>(s)] = off;
  }
  Vec out = amps;
  Vec local(block);
  const std::size_t dim = static_cast<std::size_t>(amps.size());
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & target_mask) continue;
    for (Eigen::Index s = 0; s < block; ++s) local(s) = amps(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(s)]));
    const Vec res = gate * local;
    for (Eigen::Index s = 0; s < block; ++s) out(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(s)])) = res(s);
  }
  return out;
}

Operator embed(const Operator& gate, const std::vector<int>& targets, int num_qubits) {
  if (num_qubits > kMaxQubits) throw std::length_error("embed: register too large");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Operator out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Vec e = Vec::Zero(dim);
    e(c) = 1.0;
    out.col(c) = apply_operator(e, gate, targets, num_qubits);
  }
  return out;
}

StateVector apply_gate(const StateVector& state, const Operator& gate, const std::vector<int>& targets) {
  return StateVector::normalized(apply_operator(state.amplitudes(), gate, targets, state.num_qubits()));
}

std::vector<double> qubit_probabilities(const StateVector& state, int qubit, const Basis& qubit_basis) {
  require_orthonormal_basis(qubit_basis, 2);
  const int n = state.num_qubits();
  if (qubit < 0 || qubit >= n) throw std::out_of_range("qubit index out of range");
  const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
  std::vector<double> p(2, 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (i & mask) continue;
    const cplx a0 = state[i];
    const cplx a1 = state[i | mask];
    for (int o = 0; o < 2; ++o) {
      const Vec& b = qubit_basis[static_cast<std::size_t>(o)];
      p[static_cast<std::size_t>(o)] += std::norm(std::conj(b(0)) * a0 + std::conj(b(1)) * a1);
    }
  }
  return p;
}

namespace {

Vec contract_qubit(const StateVector& state, int qubit, const Vec& b) {
  const int n = state.num_qubits();
  const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
  const std::size_t low = mask - 1;
  Vec out(static_cast<Eigen::Index>(state.dim() / 2));
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (i & mask) continue;
    const std::size_t j = ((i >> 1) & ~low) | (i & low);
    out(static_cast<Eigen::Index>(j)) = std::conj(b(0)) * state[i] + std::conj(b(1)) * state[i | mask];
  }
  return out;
}

}  // namespace

QubitOutcome project_and_remove(const StateVector& state, int qubit, const Basis& qubit_basis, int outcome) {
  const std::vector<double> p = qubit_probabilities(state, qubit, qubit_basis);
  if (outcome < 0 || outcome > 1) throw std::out_of_range("project_and_remove: outcome must be 0 or 1");
  const double prob = p[static_cast<std::size_t>(outcome)];
  if (prob <= 0.0) throw std::runtime_error("project_and_remove: zero-probability branch");
  if (state.num_qubits() == 1) return {outcome, prob, StateVector()};
  Vec rest = contract_qubit(state, qubit, qubit_basis[static_cast<std::size_t>(outcome)]);
  return {outcome, prob, StateVector::normalized(rest)};
}

QubitOutcome measure_and_remove(const StateVector& state, int qubit, const Basis& qubit_basis, RandomSource& rng) {
  const std::vector<double> p = settle_distribution(qubit_probabilities(state, qubit, qubit_basis));
  const int o = static_cast<int>(rng.categorical(p.data(), 2));
  return project_and_remove(state, qubit, qubit_basis, o);
}

// --------------------------------------------------------- density calculus

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& keep) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("partial_trace: zero factor dimension");
    total *= d;
  }
  if (total != rho.dim()) throw std::invalid_argument("partial_trace: factor dimensions do not match operator");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw std::invalid_argument("partial_trace: invalid keep index");
    kept[k] = true;
  }
  std::vector<std::size_t> stride(dims.size());
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
  }
  std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (!kept[i]) traced.push_back(i);

  std::size_t dk = 1, dt = 1;
  for (std::size_t k : keep_sorted) dk *= dims[k];
  for (std::size_t t : traced) dt *= dims[t];

  auto offset = [&](const std::vector<std::size_t>& factors, std::size_t flat) {
    std::size_t off = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
      const std::size_t f = factors[i];
      off += (flat % dims[f]) * stride[f];
      flat /= dims[f];
    }
    return off;
  };

  std::vector<std::size_t> koff(dk), toff(dt);
  for (std::size_t i = 0; i < dk; ++i) koff[i] = offset(keep_sorted, i);
  for (std::size_t i = 0; i < dt; ++i) toff[i] = offset(traced, i);

  const Operator& m = rho.matrix();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        acc += m(static_cast<Eigen::Index>(koff[r] + toff[t]), static_cast<Eigen::Index>(koff[c] + toff[t]));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return DensityOperator::from_unnormalized(out);
}

double purity(const DensityOperator& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

double expectation(const DensityOperator& rho, const Operator& observable) {
  if (observable.rows() != static_cast<Eigen::Index>(rho.dim())) throw std::invalid_argument("expectation: dimension mismatch");
  return (rho.matrix() * observable).trace().real();
}

DensityOperator apply_unitary(const DensityOperator& rho, const Operator& u) {
  return DensityOperator::from_unnormalized(u * rho.matrix() * u.adjoint());
}

// ----------------------------------------------------------------- random

StateVector random_state(std::size_t dim, RandomSource& rng) {
  check_dim_budget(dim);
  Vec v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(rng.normal(), rng.normal());
  return StateVector::normalized(v);
}

Operator random_unitary(std::size_t dim, RandomSource& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  Operator g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ() * Operator::Identity(d, d);
  const Operator r = qr.matrixQR();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

DensityOperator random_density(std::size_t dim, RandomSource& rng, std::size_t rank) {
  if (rank == 0) rank = dim;
  const auto d = static_cast<Eigen::Index>(dim);
  Operator g(d, static_cast<Eigen::Index>(rank));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  return DensityOperator::from_unnormalized(g * g.adjoint());
}

CloningFit fit_cloner(const StateVector& a, const StateVector& b) {
  if (a.dim() != 2 || b.dim() != 2) throw std::invalid_argument("fit_cloner: qubit inputs expected");
  const StateVector zero = StateVector::basis(2, 0);
  Operator in(4, 2), target(4, 2);
  in.col(0) = tensor_product(a, zero).amplitudes();
  in.col(1) = tensor_product(b, zero).amplitudes();
  target.col(0) = tensor_product(a, a).amplitudes();
  target.col(1) = tensor_product(b, b).amplitudes();
  // argmin_U ||U in - target||_F over unitaries: U = W V^dagger from svd(target in^dagger).
  Eigen::JacobiSVD<Operator> svd(target * in.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  CloningFit fit;
  fit.unitary = svd.matrixU() * svd.matrixV().adjoint();
  fit.fidelity_a = std::norm(target.col(0).dot(fit.unitary * in.col(0)));
  fit.fidelity_b = std::norm(target.col(1).dot(fit.unitary * in.col(1)));
  return fit;
}

}  // namespace chronoq
