// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/consensus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "chronoq/optimize.hpp"
#include "json.hpp"

namespace chronoq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kNetworkStream = 0x6e6574;

void require_qubits(const Network& net, std::size_t dim) {
  if (dim != (std::size_t{1} << net.size())) {
    throw std::invalid_argument("candidate has " + std::to_string(dim) + " amplitudes; network has " +
                                std::to_string(net.size()) + " nodes");
  }
}

std::vector<int> targets_of(const Node& node) {
  if (node.cheat_qubits.empty()) return {node.id};
  return node.cheat_qubits;
}

// Mixed candidates are handled as their eigen-ensemble.
struct Ensemble {
  std::vector<double> weights;
  std::vector<StateVector> states;
};

Ensemble eigen_ensemble(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Operator> es(rho.matrix());
  Ensemble e;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w <= kTolAlg) continue;
    e.weights.push_back(w);
    e.states.push_back(StateVector::normalized(es.eigenvectors().col(i)));
  }
  double total = 0.0;
  for (double w : e.weights) total += w;
  for (double& w : e.weights) w /= total;
  return e;
}

const StateVector& draw_component(const Ensemble& e, RandomSource& rng) {
  return e.states[rng.categorical(e.weights.data(), e.weights.size())];
}

// Row k is <k_theta|, so this maps the theta basis onto the computational one.
Operator theta_rotation(double theta) {
  const Basis b = theta_basis(theta);
  Operator v(2, 2);
  v.row(0) = b[0].adjoint();
  v.row(1) = b[1].adjoint();
  return v;
}

Operator hermitian_exp(const std::vector<double>& p, std::size_t offset, Eigen::Index d) {
  Operator h = Operator::Zero(d, d);
  std::size_t k = offset;
  for (Eigen::Index i = 0; i < d; ++i) h(i, i) = p[k++];
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      h(i, j) = cplx(p[k], p[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  Vec phases(d);
  for (Eigen::Index i = 0; i < d; ++i) phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

// ------------------------------------------------------------------- Network

Network::Network(std::size_t n, std::uint64_t seed) : rng_(seed, kNetworkStream) {
  if (n < 1) throw std::invalid_argument("network needs at least one node");
  if (n > static_cast<std::size_t>(kMaxQubits)) throw std::length_error("network too large");
  for (std::size_t i = 0; i < n; ++i) {
    nodes_.push_back({static_cast<int>(i), true, std::nullopt, {}});
    chains_.push_back(make_chain(Record{0, 0}));
  }
}

void Network::set_cheat(std::size_t node, Operator u) {
  if (u.rows() != 2 || !is_unitary(u)) throw std::invalid_argument("set_cheat: single-qubit unitary expected");
  Node& nd = nodes_.at(node);
  nd.honest = false;
  nd.cheat = std::move(u);
  nd.cheat_qubits.clear();
}

void Network::set_coalition_cheat(const std::vector<int>& members, Operator u) {
  if (members.empty()) throw std::invalid_argument("set_coalition_cheat: empty coalition");
  if (u.rows() != (Eigen::Index{1} << members.size()) || !is_unitary(u)) {
    throw std::invalid_argument("set_coalition_cheat: unitary does not match coalition size");
  }
  for (int m : members) {
    Node& nd = nodes_.at(static_cast<std::size_t>(m));
    nd.honest = false;
    nd.cheat.reset();
    nd.cheat_qubits.clear();
  }
  Node& lead = nodes_.at(static_cast<std::size_t>(members.front()));
  lead.cheat = std::move(u);
  lead.cheat_qubits = members;
}

void Network::clear_cheats() {
  for (auto& nd : nodes_) {
    nd.honest = true;
    nd.cheat.reset();
    nd.cheat_qubits.clear();
  }
}

int Network::select_verifier() { return static_cast<int>(rng_.uniform_index(nodes_.size())); }

// -------------------------------------------------------------------- angles

ThetaDraw sample_theta_angles(std::size_t n, RandomSource& rng) {
  if (n < 2) throw std::invalid_argument("sample_theta_angles: n must be at least 2");
  ThetaDraw d;
  double partial = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double t = rng.uniform(0.0, kPi);
    d.angles.push_back(t);
    partial += t;
  }
  const double k = std::ceil(partial / kPi);
  double last = k * kPi - partial;
  if (last < 0.0) last = 0.0;
  if (last >= kPi) last -= kPi;
  d.angles.push_back(last);
  d.multiple = static_cast<int>(std::lround((partial + last) / kPi));
  return d;
}

ThetaDraw theta_draw_from(const std::vector<double>& angles) {
  if (angles.empty()) throw std::invalid_argument("theta_draw_from: no angles");
  double sum = 0.0;
  for (double t : angles) {
    if (t < 0.0 || t >= kPi) throw std::invalid_argument("theta angle outside [0, pi)");
    sum += t;
  }
  const long m = std::lround(sum / kPi);
  if (std::abs(sum - static_cast<double>(m) * kPi) > kTolAlg) {
    throw std::invalid_argument("theta angles do not sum to a multiple of pi");
  }
  return {angles, static_cast<int>(m)};
}

Basis theta_basis(double theta) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx ph = std::polar(1.0, theta);
  Vec plus(2), minus(2);
  plus << r, r * ph;
  minus << r, -r * ph;
  return {plus, minus};
}

QubitOutcome theta_measure(const StateVector& state, int qubit, double theta, RandomSource& rng) {
  if (theta < 0.0 || theta >= kPi) throw std::invalid_argument("theta_measure: theta outside [0, pi)");
  return measure_and_remove(state, qubit, theta_basis(theta), rng);
}

// -------------------------------------------------------------------- rounds

StateVector apply_cheats(const Network& net, const StateVector& candidate) {
  require_qubits(net, candidate.dim());
  StateVector s = candidate;
  for (const auto& nd : net.nodes())
    if (nd.cheat) s = apply_gate(s, *nd.cheat, targets_of(nd));
  return s;
}

DensityOperator apply_cheats(const Network& net, const DensityOperator& candidate) {
  require_qubits(net, candidate.dim());
  const int n = static_cast<int>(net.size());
  Operator u = Operator::Identity(static_cast<Eigen::Index>(candidate.dim()), static_cast<Eigen::Index>(candidate.dim()));
  for (const auto& nd : net.nodes())
    if (nd.cheat) u = embed(*nd.cheat, targets_of(nd), n) * u;
  return apply_unitary(candidate, u);
}

RoundResult run_round_with(const Network& net, const StateVector& candidate, const ThetaDraw& draw, int verifier,
                           RandomSource& rng) {
  require_qubits(net, candidate.dim());
  if (draw.angles.size() != net.size()) throw std::invalid_argument("run_round: one angle per node expected");
  RoundResult r;
  r.verifier = verifier;
  r.angles = draw.angles;
  r.multiple = draw.multiple;
  StateVector s = apply_cheats(net, candidate);
  int parity = 0;
  for (std::size_t j = 0; j < net.size(); ++j) {
    // Earlier qubits are gone, so node j's qubit is always the leading one.
    QubitOutcome o = theta_measure(s, 0, draw.angles[j], rng);
    r.outcomes.push_back(o.outcome);
    parity ^= o.outcome;
    if (j + 1 < net.size()) s = std::move(o.remaining);
  }
  r.pass = parity == (draw.multiple & 1);
  return r;
}

RoundResult run_round(Network& net, const StateVector& candidate, RandomSource& rng) {
  require_qubits(net, candidate.dim());
  const int verifier = net.select_verifier();
  return run_round_with(net, candidate, sample_theta_angles(net.size(), rng), verifier, rng);
}

RoundResult run_round(Network& net, const DensityOperator& candidate, RandomSource& rng) {
  require_qubits(net, candidate.dim());
  const Ensemble e = eigen_ensemble(candidate);
  const int verifier = net.select_verifier();
  const ThetaDraw draw = sample_theta_angles(net.size(), rng);
  return run_round_with(net, draw_component(e, rng), draw, verifier, rng);
}

std::vector<double> theta_outcome_distribution(const DensityOperator& rho, const std::vector<double>& angles) {
  const int n = static_cast<int>(angles.size());
  if (rho.dim() != (std::size_t{1} << n)) throw std::invalid_argument("theta_outcome_distribution: size mismatch");
  Operator w = theta_rotation(angles[0]);
  for (int j = 1; j < n; ++j) w = tensor_product(w, theta_rotation(angles[static_cast<std::size_t>(j)]));
  const Operator rot = w * rho.matrix() * w.adjoint();
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) p[i] = std::max(0.0, rot(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
  return p;
}

double theta_pass_probability(const DensityOperator& rho, const ThetaDraw& draw) {
  const std::size_t n = draw.angles.size();
  if (rho.dim() != (std::size_t{1} << n)) throw std::invalid_argument("theta_pass_probability: size mismatch");
  auto x_theta = [](double t) { return Operator(std::cos(t) * pauli('X') + std::sin(t) * pauli('Y')); };
  Operator obs = x_theta(draw.angles[0]);
  for (std::size_t j = 1; j < n; ++j) obs = tensor_product(obs, x_theta(draw.angles[j]));
  const double sign = (draw.multiple & 1) ? -1.0 : 1.0;
  return 0.5 * (1.0 + sign * expectation(rho, obs));
}

PassEstimate estimate_pass_probability(const DensityOperator& rho, Network& net, std::size_t rounds,
                                       RandomSource& rng) {
  if (rounds < 1) throw std::invalid_argument("estimate_pass_probability: rounds must be positive");
  require_qubits(net, rho.dim());
  const Ensemble e = eigen_ensemble(rho);
  PassEstimate est;
  est.rounds = rounds;
  for (std::size_t i = 0; i < rounds; ++i) {
    const ThetaDraw draw = sample_theta_angles(net.size(), rng);
    if (run_round_with(net, draw_component(e, rng), draw, 0, rng).pass) ++est.passes;
  }
  est.p = static_cast<double>(est.passes) / static_cast<double>(rounds);
  est.std_err = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(rounds));
  return est;
}

double ghz_fidelity(const DensityOperator& rho) {
  const StateVector g = ghz_state(static_cast<int>(std::lround(std::log2(static_cast<double>(rho.dim())))));
  if (g.dim() != rho.dim()) throw std::invalid_argument("ghz_fidelity: dimension is not a power of two");
  return (g.amplitudes().adjoint() * rho.matrix() * g.amplitudes())(0, 0).real();
}

// ------------------------------------------------------------ fidelity bounds

MaxFidelity corrected_fidelity(const DensityOperator& rho, std::size_t honest_count,
                               const std::vector<Operator>& seeds, RandomSource& rng) {
  const StateVector g = ghz_state(static_cast<int>(std::lround(std::log2(static_cast<double>(rho.dim())))));
  const int n = g.num_qubits();
  if (honest_count > static_cast<std::size_t>(n)) throw std::invalid_argument("corrected_fidelity: k exceeds n");
  const int nd = n - static_cast<int>(honest_count);
  if (nd == 0) return {ghz_fidelity(rho), Operator::Identity(1, 1)};

  std::vector<int> targets;
  for (int q = static_cast<int>(honest_count); q < n; ++q) targets.push_back(q);
  const Eigen::Index d = Eigen::Index{1} << nd;
  const bool joint = nd <= 2;
  const std::size_t n_params = joint ? static_cast<std::size_t>(d * d) : static_cast<std::size_t>(4 * nd);

  auto fid_of = [&](const Operator& u) {
    const Vec gp = apply_operator(g.amplitudes(), u.adjoint(), targets, n);
    return (gp.adjoint() * rho.matrix() * gp)(0, 0).real();
  };
  auto unitary_of = [&](const Operator& u0, const std::vector<double>& p) {
    if (joint) return Operator(u0 * hermitian_exp(p, 0, d));
    Operator local = hermitian_exp(p, 0, 2);
    for (int j = 1; j < nd; ++j) local = tensor_product(local, hermitian_exp(p, static_cast<std::size_t>(4 * j), 2));
    return Operator(u0 * local);
  };

  std::vector<Operator> starts{Operator::Identity(d, d)};
  for (const auto& s : seeds) {
    if (s.rows() != d || !is_unitary(s, 1e-6)) throw std::invalid_argument("corrected_fidelity: bad seed unitary");
    starts.push_back(s);
  }
  for (int i = 0; i < 4; ++i) starts.push_back(random_unitary(static_cast<std::size_t>(d), rng));

  MaxFidelity best{-1.0, Operator::Identity(d, d)};
  for (const auto& u0 : starts) {
    const CompassResult r = compass_maximize([&](const std::vector<double>& p) { return fid_of(unitary_of(u0, p)); },
                                             std::vector<double>(n_params, 0.0), 0.5, 1e-7, 6000);
    if (r.value > best.value) best = {r.value, unitary_of(u0, r.x)};
  }
  return best;
}

std::string FidelityBoundsReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["rounds"] = rounds;
  j["pass_rate"] = pass_rate;
  j["fidelity"] = fidelity;
  j["honest_bound_ok"] = honest_bound_ok;
  j["dishonest_bound_ok"] = dishonest_bound_ok;
  return j.dump();
}

FidelityBoundsReport check_fidelity_bounds(const DensityOperator& rho, std::size_t honest_count,
                                           std::size_t cheat_samples, std::size_t rounds, RandomSource& rng) {
  const std::size_t n = static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(rho.dim()))));
  if (honest_count < 1 || honest_count > n) throw std::invalid_argument("check_fidelity_bounds: need 1 <= k <= n");
  FidelityBoundsReport rep;
  rep.n = n;
  rep.honest_count = honest_count;
  rep.rounds = rounds;

  Network net(n, rng.next_u64());
  const PassEstimate honest = estimate_pass_probability(rho, net, rounds, rng);
  rep.pass_rate = honest.p;
  rep.pass_std_err = honest.std_err;
  rep.fidelity = ghz_fidelity(rho);
  rep.honest_bound_ok = rep.fidelity >= 2.0 * honest.p - 1.0 - 3.0 * honest.std_err - kTolAlg;

  if (honest_count == n || cheat_samples == 0) {
    rep.corrected_fidelity = rep.fidelity;
    return rep;
  }
  // Random local rotations for every dishonest node.
  std::vector<std::vector<Operator>> cheats(cheat_samples);
  std::vector<Operator> joint;
  for (auto& c : cheats) {
    Operator u = Operator::Identity(1, 1);
    for (std::size_t q = honest_count; q < n; ++q) {
      c.push_back(random_unitary(2, rng));
      u = tensor_product(u, c.back());
    }
    joint.push_back(u);
  }
  rep.corrected_fidelity = corrected_fidelity(rho, honest_count, joint, rng).value;
  for (const auto& c : cheats) {
    net.clear_cheats();
    for (std::size_t q = honest_count; q < n; ++q) net.set_cheat(q, c[q - honest_count]);
    const PassEstimate p = estimate_pass_probability(rho, net, rounds, rng);
    CheatCase cc{p.p, p.std_err, 4.0 * p.p - 3.0 <= rep.corrected_fidelity + kDishonestSlack};
    rep.dishonest_bound_ok = rep.dishonest_bound_ok && cc.ok;
    rep.cheats.push_back(cc);
  }
  return rep;
}

// ----------------------------------------------------------------- admission

AdmitResult admit_block(Network& net, const DensityOperator& candidate, const AdmitConfig& config) {
  require_qubits(net, candidate.dim());
  if (config.rounds < 1) throw std::invalid_argument("admit_block: rounds must be positive");
  if (config.copies < config.rounds) {
    throw std::invalid_argument("admit_block: insufficient copies (" + std::to_string(config.copies) + " for " +
                                std::to_string(config.rounds) + " rounds)");
  }
  if (config.threshold < 0.0 || config.threshold > 1.0) throw std::invalid_argument("admit_block: threshold outside [0, 1]");

  AdmitResult res;
  res.rounds = config.rounds;
  if (config.threshold == 0.0) res.warnings.push_back("threshold 0 admits every candidate");
  res.verifier = net.select_verifier();
  RandomSource rr = net.rng().derive(net.rng().next_u64());
  const Ensemble e = eigen_ensemble(candidate);
  std::size_t passes = 0;
  for (std::size_t i = 0; i < config.rounds; ++i) {
    const ThetaDraw draw = sample_theta_angles(net.size(), rr);
    if (run_round_with(net, draw_component(e, rr), draw, res.verifier, rr).pass) ++passes;
  }
  res.pass_rate = static_cast<double>(passes) / static_cast<double>(config.rounds);
  res.accepted = res.pass_rate >= config.threshold;
  if (res.accepted) {
    for (std::size_t i = 0; i < net.size(); ++i)
      if (net.nodes()[i].honest) net.local_chain(i) = append(net.local_chains()[i], config.record, rr);
  }
  return res;
}

}  // namespace chronoq
