// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace chronoq {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Create: return "create";
    case EventKind::Delay: return "delay";
    case EventKind::Measure: return "measure";
    case EventKind::Fuse: return "fuse";
  }
  return "?";
}

// ---------------------------------------------------------- TemporalRegister

std::size_t TemporalRegister::index_of(const ModeId& m) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].id.photon == m.photon) return i;
  throw std::out_of_range("unknown mode");
}

const TemporalRegister::Mode& TemporalRegister::mode(const ModeId& m) const { return modes_[index_of(m)]; }

ModeId TemporalRegister::current(const ModeId& m) const { return mode(m).id; }

bool TemporalRegister::is_consumed(const ModeId& m) const { return mode(m).consumed; }

std::vector<ModeId> TemporalRegister::live_modes() const {
  std::vector<ModeId> out;
  for (const auto& m : modes_)
    if (!m.consumed) out.push_back(m.id);
  return out;
}

int TemporalRegister::qubit_of(const ModeId& m) const {
  const std::size_t idx = index_of(m);
  if (modes_[idx].consumed) throw std::logic_error("mode " + modes_[idx].id.spatial + " has been consumed");
  int q = 0;
  for (std::size_t i = 0; i < idx; ++i)
    if (!modes_[i].consumed) ++q;
  return q;
}

void TemporalRegister::apply(const Operator& u, const std::vector<ModeId>& targets) {
  std::vector<int> qs;
  for (const auto& m : targets) qs.push_back(qubit_of(m));
  state_ = apply_gate(state_, u, qs);
}

void TemporalRegister::replace_state(StateVector s) {
  if (s.dim() != state_.dim()) throw std::invalid_argument("replace_state: size mismatch");
  state_ = std::move(s);
}

std::pair<ModeId, ModeId> TemporalRegister::add_pair(const StateVector& pair, const std::string& s1,
                                                     const std::string& s2, int t) {
  if (pair.dim() != 4) throw std::invalid_argument("create_pair: two-qubit state expected");
  if (static_cast<int>(live_modes().size()) + 2 > kMaxQubits) throw std::length_error("create_pair: register full");
  state_ = tensor_product(state_, pair);
  ModeId a{s1, t, next_photon_++};
  ModeId b{s2, t, next_photon_++};
  modes_.push_back({a, false});
  modes_.push_back({b, false});
  return {a, b};
}

void TemporalRegister::log(EventKind kind, std::vector<ModeId> modes, int t) {
  if (t < now()) {
    throw std::logic_error("event at t=" + std::to_string(t) + " precedes the last event at t=" + std::to_string(now()));
  }
  events_.push_back({kind, std::move(modes), t});
}

void TemporalRegister::set_time(const ModeId& m, int t) { modes_[index_of(m)].id.time_step = t; }

void TemporalRegister::consume(const std::vector<ModeId>& ms, StateVector remaining) {
  for (const auto& m : ms) modes_[index_of(m)].consumed = true;
  if (remaining.dim() != (std::size_t{1} << live_modes().size())) throw std::logic_error("consume: state size mismatch");
  state_ = std::move(remaining);
}

std::string TemporalRegister::event_log_jsonl() const {
  std::string out;
  for (const auto& e : events_) {
    nlohmann::ordered_json j;
    j["event"] = to_string(e.kind);
    nlohmann::ordered_json modes = nlohmann::ordered_json::array();
    for (const auto& m : e.modes) {
      nlohmann::ordered_json mj;
      mj["spatial"] = m.spatial;
      mj["time_step"] = m.time_step;
      mj["photon"] = m.photon;
      modes.push_back(mj);
    }
    j["modes"] = modes;
    j["t"] = e.t;
    out += j.dump();
    out += '\n';
  }
  return out;
}

// --------------------------------------------------------------- operations

std::pair<ModeId, ModeId> create_pair(TemporalRegister& reg, const StateVector& pair, const std::string& spatial_a,
                                      const std::string& spatial_b, int t) {
  if (t < 0) throw std::invalid_argument("create_pair: negative time");
  if (t < reg.now()) throw std::logic_error("create_pair: creation at t=" + std::to_string(t) + " precedes last event");
  auto ids = reg.add_pair(pair, spatial_a, spatial_b, t);
  reg.log(EventKind::Create, {ids.first, ids.second}, t);
  return ids;
}

std::pair<ModeId, ModeId> create_pair(TemporalRegister& reg, BellLabel label, const std::string& spatial_a,
                                      const std::string& spatial_b, int t) {
  return create_pair(reg, bell_state(label), spatial_a, spatial_b, t);
}

void delay(TemporalRegister& reg, const ModeId& mode, int dt) {
  if (dt <= 0) throw std::invalid_argument("delay: dt must be positive");
  if (reg.is_consumed(mode)) throw std::logic_error("delay: mode has been consumed");
  const ModeId before = reg.current(mode);
  reg.log(EventKind::Delay, {before}, before.time_step);
  reg.set_time(mode, before.time_step + dt);
}

int measure_mode(TemporalRegister& reg, const ModeId& mode, const Basis& basis, RandomSource& rng) {
  const int q = reg.qubit_of(mode);
  const ModeId cur = reg.current(mode);
  const QubitOutcome o = measure_and_remove(reg.state(), q, basis, rng);
  reg.log(EventKind::Measure, {cur}, cur.time_step);
  reg.consume({mode}, o.remaining);
  return o.outcome;
}

namespace {

// <b| on qubits (q1, q2), leaving the other qubits.
Vec contract_pair(const StateVector& s, int q1, int q2, const Vec& b) {
  const int n = s.num_qubits();
  const std::size_t m1 = std::size_t{1} << (n - 1 - q1);
  const std::size_t m2 = std::size_t{1} << (n - 1 - q2);
  Vec out = Vec::Zero(static_cast<Eigen::Index>(s.dim() / 4));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i & (m1 | m2)) continue;
    cplx acc = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) acc += std::conj(b(2 * x + y)) * s[i | (x ? m1 : 0) | (y ? m2 : 0)];
    // Squeeze out the two measured bit positions.
    std::size_t j = 0;
    int pos = 0;
    for (int bit = 0; bit < n; ++bit) {
      const std::size_t mask = std::size_t{1} << bit;
      if (mask == m1 || mask == m2) continue;
      if (i & mask) j |= std::size_t{1} << pos;
      ++pos;
    }
    out(static_cast<Eigen::Index>(j)) = acc;
  }
  return out;
}

void check_pair(const TemporalRegister& reg, const ModeId& m1, const ModeId& m2) {
  if (m1 == m2) throw std::invalid_argument("a mode cannot be paired with itself");
  if (reg.is_consumed(m1) || reg.is_consumed(m2)) throw std::logic_error("mode has been consumed");
}

}  // namespace

namespace {

const BellLabel kBellLabels[4] = {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

BellOutcome bell_collapse(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, RandomSource* rng,
                          BellLabel forced) {
  check_pair(reg, m1, m2);
  const int q1 = reg.qubit_of(m1);
  const int q2 = reg.qubit_of(m2);
  const ModeId c1 = reg.current(m1);
  const ModeId c2 = reg.current(m2);
  const int t = std::max(c1.time_step, c2.time_step);
  if (t < reg.now()) throw std::logic_error("bell_measure: measurement time precedes the last event");

  std::vector<Vec> rests(4);
  double p[4];
  for (int k = 0; k < 4; ++k) {
    rests[static_cast<std::size_t>(k)] = contract_pair(reg.state(), q1, q2, bell_state(kBellLabels[k]).amplitudes());
    p[k] = rests[static_cast<std::size_t>(k)].squaredNorm();
  }
  std::size_t k = 0;
  if (rng) {
    k = rng->categorical(p, 4);
  } else {
    while (kBellLabels[k] != forced) ++k;
    if (p[k] <= kTolAlg) throw std::runtime_error("bell_project: outcome " + to_string(forced) + " has probability 0");
  }
  reg.log(EventKind::Measure, {c1, c2}, t);
  reg.consume({m1, m2}, StateVector::normalized(rests[k]));
  return {kBellLabels[k], p[k]};
}

}  // namespace

BellOutcome bell_measure(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, RandomSource& rng) {
  return bell_collapse(reg, m1, m2, &rng, BellLabel::PhiPlus);
}

BellOutcome bell_project(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, BellLabel label) {
  return bell_collapse(reg, m1, m2, nullptr, label);
}

Operator fusion_projector() {
  Operator f = Operator::Zero(4, 4);
  f(0, 0) = 1.0;
  f(3, 3) = 1.0;
  return f;
}

double fusion_probability(const TemporalRegister& reg, const ModeId& m1, const ModeId& m2) {
  check_pair(reg, m1, m2);
  const int n = reg.state().num_qubits();
  const Vec proj = apply_operator(reg.state().amplitudes(), fusion_projector(), {reg.qubit_of(m1), reg.qubit_of(m2)}, n);
  return proj.squaredNorm();
}

bool pbs_fuse(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, RandomSource& rng) {
  check_pair(reg, m1, m2);
  const ModeId c1 = reg.current(m1);
  const ModeId c2 = reg.current(m2);
  const int t = std::max(c1.time_step, c2.time_step);
  if (t < reg.now()) throw std::logic_error("pbs_fuse: fusion time precedes the last event");
  const int n = reg.state().num_qubits();
  const std::vector<int> qs{reg.qubit_of(m1), reg.qubit_of(m2)};
  const Vec proj = apply_operator(reg.state().amplitudes(), fusion_projector(), qs, n);
  const double p = proj.squaredNorm();
  reg.log(EventKind::Fuse, {c1, c2}, t);
  if (p > 0.0 && rng.bernoulli(p)) {
    reg.replace_state(StateVector::normalized(proj));
    return true;
  }
  // Complementary branch; the register no longer carries the intended state.
  const Operator comp = Operator::Identity(4, 4) - fusion_projector();
  const Vec rest = apply_operator(reg.state().amplitudes(), comp, qs, n);
  if (rest.norm() > 0.0) reg.replace_state(StateVector::normalized(rest));
  reg.invalidate();
  return false;
}

StateVector ghz_from_pattern(const std::string& bits, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("ghz_from_pattern: sign must be +1 or -1");
  const StateVector a = StateVector::from_bits(bits);
  std::string flipped = bits;
  for (char& c : flipped) c = (c == '0') ? '1' : '0';
  const StateVector b = StateVector::from_bits(flipped);
  return StateVector::normalized(a.amplitudes() + static_cast<double>(sign) * b.amplitudes());
}

DensityOperator ghz_density_recursive(const DensityOperator& pair_rho, int n_pairs) {
  if (pair_rho.dim() != 4) throw std::invalid_argument("ghz_density_recursive: two-qubit operator expected");
  if (n_pairs < 1) throw std::invalid_argument("ghz_density_recursive: n_pairs must be positive");
  if (2 * n_pairs > kMaxQubits / 2) throw std::length_error("ghz_density_recursive: operator too large");
  Operator rho = pair_rho.matrix();
  for (int k = 1; k < n_pairs; ++k) rho = tensor_product(rho, pair_rho.matrix());
  const int nq = 2 * n_pairs;
  const Eigen::Index dim = rho.rows();
  // F is diagonal: keep entries whose row and column indices agree on each fused pair.
  auto fused_ok = [&](Eigen::Index idx) {
    for (int k = 1; k < n_pairs; ++k) {
      const int qa = 2 * k - 1, qb = 2 * k;
      const bool ba = (idx >> (nq - 1 - qa)) & 1;
      const bool bb = (idx >> (nq - 1 - qb)) & 1;
      if (ba != bb) return false;
    }
    return true;
  };
  for (Eigen::Index r = 0; r < dim; ++r) {
    const bool rok = fused_ok(r);
    for (Eigen::Index c = 0; c < dim; ++c)
      if (!rok || !fused_ok(c)) rho(r, c) = 0.0;
  }
  return DensityOperator::from_unnormalized(rho);
}

TemporalSwapRun temporal_swap(BellLabel pair, const Basis& first_basis, const Basis& last_basis, RandomSource& rng) {
  TemporalSwapRun run;
  auto [p1, p2] = create_pair(run.reg, pair, "1", "2", 0);
  run.photon1 = p1;
  run.photon2 = p2;
  run.first_outcome = measure_mode(run.reg, p1, first_basis, rng);
  delay(run.reg, p2, 1);
  auto [p3, p4] = create_pair(run.reg, pair, "3", "4", 1);
  run.photon3 = p3;
  run.photon4 = p4;
  run.middle = bell_measure(run.reg, p2, p3, rng);
  delay(run.reg, p4, 1);
  run.last_outcome = measure_mode(run.reg, p4, last_basis, rng);
  return run;
}

StateVector swap_outer_state(BellLabel pair, BellLabel middle) {
  TemporalRegister reg;
  auto [p1, p2] = create_pair(reg, pair, "1", "2", 0);
  (void)p1;
  delay(reg, p2, 1);
  auto [p3, p4] = create_pair(reg, pair, "3", "4", 1);
  (void)p4;
  bell_project(reg, p2, p3, middle);
  return reg.state();
}

bool consumed_before_created(const TemporalRegister& reg, const ModeId& consumed, const ModeId& created) {
  const auto& ev = reg.events();
  std::size_t measured_at = ev.size(), created_at = ev.size();
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (const auto& m : ev[i].modes) {
      if (m == consumed && ev[i].kind == EventKind::Measure && measured_at == ev.size()) measured_at = i;
      if (m == created && ev[i].kind == EventKind::Create && created_at == ev.size()) created_at = i;
    }
  if (measured_at == ev.size() || created_at == ev.size()) return false;
  return measured_at < created_at && ev[measured_at].t < ev[created_at].t;
}

}  // namespace chronoq
