// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chronoq/qcore.hpp"

namespace chronoq {

/// Label of one photon: spatial mode plus time step in units of tau.
///
/// `photon` is a register-assigned serial number that identifies the mode;
/// (spatial, time_step) labels may coincide transiently, e.g. while a photon
/// waits in a delay line next to a freshly created pair.
struct ModeId {
  std::string spatial;
  int time_step = 0;
  int photon = -1;
  bool operator==(const ModeId& o) const { return photon == o.photon; }
};

enum class EventKind { Create, Delay, Measure, Fuse };
std::string to_string(EventKind kind);

struct Event {
  EventKind kind;
  std::vector<ModeId> modes;
  int t = 0;
};

struct BellOutcome {
  BellLabel label = BellLabel::PhiPlus;
  double probability = 0.0;
};

/// State over unconsumed modes plus per-mode metadata and an append-only
/// event log. Events are recorded in non-decreasing time order; consumed
/// (measured) modes are dropped from the state vector.
class TemporalRegister {
 public:
  struct Mode {
    ModeId id;
    bool consumed = false;
  };

  TemporalRegister() = default;

  const StateVector& state() const { return state_; }
  const std::vector<Mode>& modes() const { return modes_; }
  const std::vector<Event>& events() const { return events_; }
  bool valid() const { return valid_; }
  /// Time of the most recent event (0 for an empty log).
  int now() const { return events_.empty() ? 0 : events_.back().t; }

  /// Modes still present in the state, in qubit order.
  std::vector<ModeId> live_modes() const;
  /// Qubit index of a live mode; throws for consumed or unknown modes.
  int qubit_of(const ModeId& m) const;
  const Mode& mode(const ModeId& m) const;
  /// Current labels of a mode (time_step reflects delays).
  ModeId current(const ModeId& m) const;
  bool is_consumed(const ModeId& m) const;

  /// Applies a unitary to live modes without logging (local operations).
  void apply(const Operator& u, const std::vector<ModeId>& targets);
  /// Overwrites the state; size must match the live modes.
  void replace_state(StateVector s);

  /// JSON lines: {"event": ..., "modes": [...], "t": k} per event.
  std::string event_log_jsonl() const;

  // Internal mutation used by the operations below.
  std::pair<ModeId, ModeId> add_pair(const StateVector& pair, const std::string& s1, const std::string& s2, int t);
  void log(EventKind kind, std::vector<ModeId> modes, int t);
  void set_time(const ModeId& m, int t);
  void consume(const std::vector<ModeId>& ms, StateVector remaining);
  void invalidate() { valid_ = false; }

 private:
  std::size_t index_of(const ModeId& m) const;

  StateVector state_;
  bool empty_ = true;
  std::vector<Mode> modes_;
  std::vector<Event> events_;
  bool valid_ = true;
  int next_photon_ = 0;
};

/// Adds two live modes in a Bell state (or any two-qubit state) at time t.
std::pair<ModeId, ModeId> create_pair(TemporalRegister& reg, BellLabel label, const std::string& spatial_a,
                                      const std::string& spatial_b, int t);
std::pair<ModeId, ModeId> create_pair(TemporalRegister& reg, const StateVector& pair, const std::string& spatial_a,
                                      const std::string& spatial_b, int t);

/// Shifts a live mode's time step by dt > 0; amplitudes are untouched. The
/// event is logged at the time the delay starts.
void delay(TemporalRegister& reg, const ModeId& mode, int dt);

/// Single-mode projective measurement; the mode is consumed. Returns the
/// outcome index.
int measure_mode(TemporalRegister& reg, const ModeId& mode, const Basis& basis, RandomSource& rng);

/// Bell-basis measurement of two live modes at max(time steps); both are
/// consumed and the rest of the register collapses.
BellOutcome bell_measure(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, RandomSource& rng);
/// Same measurement with the outcome fixed; throws on a zero-probability label.
BellOutcome bell_project(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, BellLabel label);

/// Probability that pbs_fuse succeeds, ||F psi||^2 with F = |00><00| + |11><11|.
double fusion_probability(const TemporalRegister& reg, const ModeId& m1, const ModeId& m2);

/// Post-selected parity projection on two live modes. On success the state is
/// replaced by F psi / ||F psi|| and both modes stay in the register; on
/// failure the register is marked invalid.
bool pbs_fuse(TemporalRegister& reg, const ModeId& m1, const ModeId& m2, RandomSource& rng);

/// (|s> + sign |s-bar>)/sqrt2 for a bit string s, the closed form of a
/// temporal GHZ state whose first branch reads s.
StateVector ghz_from_pattern(const std::string& bits, int sign = +1);

/// sigma^(x)n with F applied between consecutive pairs, renormalised.
DensityOperator ghz_density_recursive(const DensityOperator& pair_rho, int n_pairs);

/// Projector |00><00| + |11><11| on two qubits.
Operator fusion_projector();

/// Two-pair swap in time. Pair (1, 2) is created at 0 and photon 1 is
/// measured at once; photon 2 waits until pair (3, 4) exists at 1, where the
/// middle Bell measurement runs; photon 4 is measured at 2.
struct TemporalSwapRun {
  TemporalRegister reg;
  ModeId photon1, photon2, photon3, photon4;
  int first_outcome = 0;
  BellOutcome middle;
  int last_outcome = 0;
};
TemporalSwapRun temporal_swap(BellLabel pair, const Basis& first_basis, const Basis& last_basis, RandomSource& rng);
/// Outer-pair (1, 4) state after the middle outcome, with photon 1 left unmeasured.
StateVector swap_outer_state(BellLabel pair, BellLabel middle);
/// True when `consumed` has a measure event strictly earlier in time, and
/// earlier in the log, than the create event of `created`.
bool consumed_before_created(const TemporalRegister& reg, const ModeId& consumed, const ModeId& created);

}  // namespace chronoq
