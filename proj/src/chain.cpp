// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "chronoq/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace chronoq {

Record Record::parse(const std::string& two_bits) {
  if (two_bits.size() != 2 || (two_bits[0] != '0' && two_bits[0] != '1') || (two_bits[1] != '0' && two_bits[1] != '1')) {
    throw std::invalid_argument("record must be two bits, got '" + two_bits + "'");
  }
  return {two_bits[0] - '0', two_bits[1] - '0'};
}

std::string Record::str() const { return std::string{static_cast<char>('0' + r1), static_cast<char>('0' + r2)}; }

StateVector superdense_bell(const Record& r) {
  const std::string b0{'0', static_cast<char>('0' + r.r2)};
  return ghz_from_pattern(b0, r.r1 ? -1 : 1);
}

StateVector qblock_state(const std::string& bits) {
  if (bits.size() < 2 || bits.size() % 2 != 0) throw std::invalid_argument("qblock_state: even-length record string expected");
  std::string branch = bits;
  const int sign = bits[0] == '1' ? -1 : 1;
  branch[0] = '0';
  return ghz_from_pattern(branch, sign);
}

// -------------------------------------------------------------- QuantumChain

std::string QuantumChain::record_string() const {
  std::string s;
  for (const auto& r : records_) s += r.str();
  return s;
}

std::vector<int> QuantumChain::timestamps() const {
  std::vector<int> ts;
  for (const auto& m : reg_.live_modes()) ts.push_back(m.time_step);
  return ts;
}

int QuantumChain::time() const {
  int t = 0;
  for (const auto& m : reg_.live_modes()) t = std::max(t, m.time_step);
  return t;
}

std::vector<ModeId> QuantumChain::live_modes() const {
  std::vector<ModeId> out;
  const int t = time();
  for (const auto& m : reg_.live_modes())
    if (m.time_step == t) out.push_back(m);
  return out;
}

QuantumChain QuantumChain::from_parts(TemporalRegister reg, std::vector<Record> records) {
  QuantumChain c;
  c.reg_ = std::move(reg);
  c.records_ = std::move(records);
  c.refresh();
  return c;
}

void QuantumChain::refresh() {
  if (records_.empty() || reg_.state().dim() != (std::size_t{1} << (2 * records_.size()))) {
    fidelity_ = 0.0;
    valid_ = false;
    return;
  }
  fidelity_ = overlap_sq(qblock_state(record_string()), reg_.state());
  valid_ = reg_.valid() && fidelity_ >= 1.0 - kTolAlg;
}

std::string QuantumChain::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& r : records_) recs.push_back(r.str());
  j["records"] = recs;
  j["timestamps"] = timestamps();
  j["valid"] = valid_;
  j["fidelity"] = fidelity_;
  return j.dump();
}

// --------------------------------------------------------------- operations

TemporalRegister encode_block(const Record& r, int t) {
  if (t < 0) throw std::invalid_argument("encode_block: negative time");
  TemporalRegister reg;
  auto [a, b] = create_pair(reg, superdense_bell(r), "a", "b", t);
  (void)a;
  delay(reg, b, 1);
  return reg;
}

QuantumChain make_chain(const Record& first) {
  return QuantumChain::from_parts(encode_block(first, 0), {first});
}

QuantumChain append(const QuantumChain& chain, const Record& r, RandomSource& rng, int* attempts_used) {
  if (!chain.valid()) throw std::logic_error("append: chain is invalid");
  if (2 * (chain.records().size() + 1) > static_cast<std::size_t>(kMaxQubits)) throw std::length_error("append: chain too long");
  const int t = chain.time();
  const ModeId last = chain.all_modes().back();
  // Bit carried by the last photon in the branch whose leading photon is 0.
  const int lead_bit = chain.record_string().back() - '0';
  for (int attempt = 1; attempt <= kFusionRetryCap; ++attempt) {
    TemporalRegister reg = chain.reg();
    auto [a, b] = create_pair(reg, superdense_bell(r), "a", "b", t);
    delay(reg, b, 1);
    if (!pbs_fuse(reg, last, a, rng)) continue;
    // Fusion leaves the new pair reading (L, r2 xor L) with the relative sign
    // multiplied by (-1)^r1; undo both with local Paulis on the new photons.
    if (lead_bit ^ r.r1) reg.apply(pauli('X'), {a});
    if (lead_bit) reg.apply(pauli('X'), {b});
    if (r.r1) reg.apply(pauli('Z'), {b});
    if (attempts_used) *attempts_used = attempt;
    std::vector<Record> recs = chain.records();
    recs.push_back(r);
    return QuantumChain::from_parts(std::move(reg), std::move(recs));
  }
  throw FusionRetryExceeded("append: fusion failed " + std::to_string(kFusionRetryCap) + " times");
}

QuantumChain build_chain(const std::vector<Record>& records, RandomSource& rng) {
  if (records.empty()) throw std::invalid_argument("build_chain: no records");
  QuantumChain c = make_chain(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) c = append(c, records[i], rng);
  return c;
}

std::string to_string(DecodeStatus s) { return s == DecodeStatus::Ok ? "OK" : "DECODE_MISMATCH"; }

namespace {

// Reads r1 r2 ... from an amplitude vector of the closed form; empty on failure.
std::string read_branches(const StateVector& s, int nq) {
  const double half = 1.0 / std::numbers::sqrt2;
  const double tol = 1e-6;
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (std::abs(s[i]) > tol) nz.push_back(i);
  if (nz.size() != 2) return {};
  const std::size_t all = (std::size_t{1} << nq) - 1;
  if ((nz[0] ^ nz[1]) != all) return {};
  const std::size_t i0 = nz[0];  // smaller index has leading bit 0
  const std::size_t i1 = nz[1];
  if (std::abs(std::abs(s[i0]) - half) > tol || std::abs(std::abs(s[i1]) - half) > tol) return {};
  const cplx rel = s[i1] / s[i0];
  if (std::abs(rel.imag()) > tol || std::abs(std::abs(rel.real()) - 1.0) > tol) return {};
  std::string bits(static_cast<std::size_t>(nq), '0');
  bits[0] = rel.real() < 0 ? '1' : '0';
  for (int q = 1; q < nq; ++q) bits[static_cast<std::size_t>(q)] = ((i0 >> (nq - 1 - q)) & 1U) ? '1' : '0';
  return bits;
}

}  // namespace

DecodeResult decode(const QuantumChain& chain) {
  const StateVector& s = chain.reg().state();
  const int nq = s.num_qubits();
  if (nq < 2) return {DecodeStatus::DecodeMismatch, {}};
  const std::string bits = read_branches(s, nq);
  if (bits.empty()) return {DecodeStatus::DecodeMismatch, {}};
  if (bits != chain.record_string()) return {DecodeStatus::DecodeMismatch, bits};
  return {DecodeStatus::Ok, bits};
}

DecodeResult statistics_decode(const QuantumChain& chain, std::size_t copies, RandomSource& rng) {
  if (copies < 2) throw std::invalid_argument("statistics_decode: need at least two copies");
  const StateVector& s = chain.reg().state();
  const int nq = s.num_qubits();
  const std::size_t half = copies / 2;

  // Z basis: each shot reads a branch pattern; normalise to leading bit 0.
  std::vector<double> pz(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) pz[i] = std::norm(s[i]);
  std::vector<std::size_t> ones(static_cast<std::size_t>(nq), 0);
  for (std::size_t c = 0; c < half; ++c) {
    std::size_t x = rng.categorical(pz.data(), pz.size());
    if (x >> (nq - 1)) x ^= (std::size_t{1} << nq) - 1;
    for (int q = 1; q < nq; ++q) ones[static_cast<std::size_t>(q)] += (x >> (nq - 1 - q)) & 1U;
  }

  // X basis: outcome parity equals r1 on the closed form.
  Vec hx = s.amplitudes();
  for (int q = 0; q < nq; ++q) hx = apply_operator(hx, standard_gate("H"), {q}, nq);
  std::vector<double> px(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) px[i] = std::norm(hx(static_cast<Eigen::Index>(i)));
  std::size_t odd = 0;
  const std::size_t nx = copies - half;
  for (std::size_t c = 0; c < nx; ++c) odd += std::popcount(rng.categorical(px.data(), px.size())) & 1U;

  std::string bits(static_cast<std::size_t>(nq), '0');
  bits[0] = 2 * odd > nx ? '1' : '0';
  for (int q = 1; q < nq; ++q) bits[static_cast<std::size_t>(q)] = 2 * ones[static_cast<std::size_t>(q)] > half ? '1' : '0';
  const bool ok = bits == chain.record_string();
  return {ok ? DecodeStatus::Ok : DecodeStatus::DecodeMismatch, bits};
}

QuantumChain tamper(const QuantumChain& chain, const ModeId& mode, const Operator& op) {
  if (op.rows() != 2 || !is_unitary(op)) throw std::invalid_argument("tamper: single-qubit unitary expected");
  const auto live = chain.live_modes();
  const bool reachable = std::any_of(live.begin(), live.end(), [&](const ModeId& m) { return m == mode; });
  if (!reachable) {
    const ModeId cur = chain.reg().current(mode);
    throw TemporalInaccessible("photon " + cur.spatial + "@" + std::to_string(cur.time_step) + " no longer exists");
  }
  TemporalRegister reg = chain.reg();
  reg.apply(op, {mode});
  return QuantumChain::from_parts(std::move(reg), chain.records());
}

// ------------------------------------------------------------ ClassicalChain

std::uint64_t ClassicalChain::digest_of(std::uint64_t prev_digest, const Record& r) {
  return splitmix64_mix(splitmix64_mix(prev_digest) ^ static_cast<std::uint64_t>(2 * r.r1 + r.r2));
}

void ClassicalChain::append(const Record& r) {
  const std::uint64_t prev = blocks_.empty() ? 0 : blocks_.back().digest;
  blocks_.push_back({r, prev, digest_of(prev, r)});
}

void ClassicalChain::tamper_record(std::size_t index, const Record& r) {
  if (index >= blocks_.size()) throw std::out_of_range("tamper_record: index out of range");
  blocks_[index].record = r;
}

std::vector<bool> ClassicalChain::verify() const {
  std::vector<bool> ok(blocks_.size(), false);
  bool intact = true;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto& b = blocks_[k];
    const std::uint64_t expected_prev = k == 0 ? 0 : blocks_[k - 1].digest;
    intact = intact && b.prev_digest == expected_prev && digest_of(b.prev_digest, b.record) == b.digest;
    ok[k] = intact;
  }
  return ok;
}

TamperContrast classical_chain_tamper_contrast(std::size_t n_blocks, std::size_t tamper_index, RandomSource& rng) {
  if (n_blocks == 0 || tamper_index >= n_blocks) throw std::out_of_range("tamper index out of range");
  std::vector<Record> records;
  for (std::size_t i = 0; i < n_blocks; ++i)
    records.push_back({static_cast<int>(rng.uniform_index(2)), static_cast<int>(rng.uniform_index(2))});

  TamperContrast out;
  out.n_blocks = n_blocks;
  out.tamper_index = tamper_index;

  ClassicalChain cc;
  for (const auto& r : records) cc.append(r);
  Record flipped = records[tamper_index];
  flipped.r2 ^= 1;
  cc.tamper_record(tamper_index, flipped);
  out.classical_valid = cc.verify();
  out.classical_first_invalid = n_blocks;
  for (std::size_t k = 0; k < n_blocks; ++k)
    if (!out.classical_valid[k]) {
      out.classical_first_invalid = k;
      break;
    }

  const QuantumChain qc = build_chain(records, rng);
  // Block k occupies photons 2k and 2k+1; its second photon is the one that
  // lingers longest.
  const ModeId target = qc.all_modes()[2 * tamper_index + 1];
  try {
    const QuantumChain hit = tamper(qc, target, pauli('X'));
    out.quantum_fidelity = hit.fidelity();
    const bool broken = !decode(hit).ok();
    out.quantum_invalid_first = 0;
    out.quantum_invalid_end = broken ? n_blocks : 0;
  } catch (const TemporalInaccessible&) {
    out.quantum_inaccessible = true;
    out.quantum_fidelity = qc.fidelity();
  }
  return out;
}

}  // namespace chronoq
