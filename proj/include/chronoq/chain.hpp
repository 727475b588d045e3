// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chronoq/temporal.hpp"

namespace chronoq {

struct Record {
  int r1 = 0;
  int r2 = 0;
  static Record parse(const std::string& two_bits);
  std::string str() const;
  bool operator==(const Record&) const = default;
};

/// Raised when an operation targets a photon that no longer exists.
class TemporalInaccessible : public std::runtime_error {
 public:
  explicit TemporalInaccessible(const std::string& what) : std::runtime_error("TEMPORAL_INACCESSIBLE: " + what) {}
};

/// Raised when fusion keeps failing past the retry cap.
class FusionRetryExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFusionRetryCap = 64;

/// beta_{r1 r2} = (|0 r2> + (-1)^r1 |1 not-r2>)/sqrt2.
StateVector superdense_bell(const Record& r);

/// Expected chain state for a record string r1 r2 ... r2n:
/// (|0 r2 ... r2n> + (-1)^r1 |1 ~r2 ... ~r2n>)/sqrt2.
StateVector qblock_state(const std::string& bits);

/// Temporal-GHZ encoded record chain. Values are snapshots; operations return
/// new chains.
class QuantumChain {
 public:
  const TemporalRegister& reg() const { return reg_; }
  const std::vector<Record>& records() const { return records_; }
  std::string record_string() const;
  /// Time step of every chain photon, in qubit order.
  std::vector<int> timestamps() const;
  bool valid() const { return valid_; }
  double fidelity() const { return fidelity_; }
  /// Chain time: the latest photon's time step.
  int time() const;
  /// Photons an outside party can still reach (those at the chain time).
  std::vector<ModeId> live_modes() const;
  std::vector<ModeId> all_modes() const { return reg_.live_modes(); }

  /// JSON: {"records": [...], "timestamps": [...], "valid": b, "fidelity": x}.
  std::string to_json() const;

  // Construction helpers used by the free functions.
  static QuantumChain from_parts(TemporalRegister reg, std::vector<Record> records);
  void refresh();

 private:
  TemporalRegister reg_;
  std::vector<Record> records_;
  bool valid_ = false;
  double fidelity_ = 0.0;
};

/// Fresh register holding beta_r on modes (a, t), (b, t + 1).
TemporalRegister encode_block(const Record& r, int t);

/// One-block chain.
QuantumChain make_chain(const Record& first);
/// Fuses a new block onto the chain's last photon, then applies the local
/// Pauli-frame correction that brings the state to the closed form.
QuantumChain append(const QuantumChain& chain, const Record& r, RandomSource& rng, int* attempts_used = nullptr);
QuantumChain build_chain(const std::vector<Record>& records, RandomSource& rng);

enum class DecodeStatus { Ok, DecodeMismatch };
struct DecodeResult {
  DecodeStatus status = DecodeStatus::Ok;
  std::string bits;  // decoded string when the structure is intact
  bool ok() const { return status == DecodeStatus::Ok; }
};
std::string to_string(DecodeStatus s);

/// Privileged decoder: reads the two amplitude branches directly.
DecodeResult decode(const QuantumChain& chain);

/// Decoder from sampled measurements on `copies` chain copies: Z-basis
/// patterns give r2..r2n, X-basis parity gives r1.
DecodeResult statistics_decode(const QuantumChain& chain, std::size_t copies, RandomSource& rng);

/// Applies `op` to one photon. Photons that are not live raise TemporalInaccessible.
QuantumChain tamper(const QuantumChain& chain, const ModeId& mode, const Operator& op);

/// Toy hash chain; digest_k = mix(mix(prev_digest_k) xor (2 r1 + r2)).
class ClassicalChain {
 public:
  struct Block {
    Record record;
    std::uint64_t prev_digest = 0;
    std::uint64_t digest = 0;
  };
  static std::uint64_t digest_of(std::uint64_t prev_digest, const Record& r);

  void append(const Record& r);
  /// Overwrites a block's record without touching stored digests.
  void tamper_record(std::size_t index, const Record& r);
  /// Per-block validity; a block is valid when it and every earlier block
  /// recompute to their stored digests.
  std::vector<bool> verify() const;
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  std::vector<Block> blocks_;
};

struct TamperContrast {
  std::size_t n_blocks = 0;
  std::size_t tamper_index = 0;
  std::size_t classical_first_invalid = 0;  // invalid range [first, n)
  std::vector<bool> classical_valid;
  bool quantum_inaccessible = false;  // the targeted photons no longer exist
  std::size_t quantum_invalid_first = 0;
  std::size_t quantum_invalid_end = 0;  // invalid range [first, end)
  double quantum_fidelity = 1.0;
};
TamperContrast classical_chain_tamper_contrast(std::size_t n_blocks, std::size_t tamper_index, RandomSource& rng);

}  // namespace chronoq
