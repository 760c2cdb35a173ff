#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "winarith/big_int.h"
#include "winarith/cost_tally.h"

namespace winarith {

/// Opaque qubit handle. Ids are never shared by two live qubits.
struct Qubit {
  std::uint32_t id = 0;
  auto operator<=>(const Qubit&) const = default;
};

/// Little-endian register of qubits (index 0 is least significant).
/// Slices alias the same qubits.
class Quint {
 public:
  Quint() = default;
  explicit Quint(std::vector<Qubit> qubits) : qubits_(std::move(qubits)) {}

  std::size_t size() const { return qubits_.size(); }
  bool empty() const { return qubits_.empty(); }
  Qubit operator[](std::size_t i) const { return qubits_[i]; }
  std::span<const Qubit> qubits() const { return qubits_; }

  /// Qubits [begin, end), clamped to the register like a Python slice.
  Quint slice(std::size_t begin, std::size_t end) const;
  Quint slice_from(std::size_t begin) const { return slice(begin, size()); }

  /// `low` followed by `high` (low bits first).
  static Quint join(const Quint& low, const Quint& high);

 private:
  std::vector<Qubit> qubits_;
};

/// A register bound to a classical odd modulus; value stays in [0, N).
struct QuintMod {
  Quint reg;
  BigInt modulus;
};

/// Computational-basis simulator for Toffoli-class circuits.
///
/// Every state is a single basis state, so registers can be read without
/// disturbing them. X-basis measurements draw their (phase-only) outcomes
/// from a seeded stream in operation order; identical seeds and operation
/// sequences reproduce identical bits and tallies.
class SimState {
 public:
  /// Basis states carry no phase; constructions skip phase-only gates.
  static constexpr bool kTracksPhase = false;

  explicit SimState(std::uint64_t seed = 0);

  SimState(const SimState&) = delete;
  SimState& operator=(const SimState&) = delete;

  Quint qalloc(std::size_t n, std::string_view label = "reg");
  QuintMod qalloc_mod(const BigInt& modulus, std::string_view label = "reg_mod");
  /// Throws NonZeroRelease if any qubit holds 1.
  void qfree(const Quint& q);

  Qubit alloc_qubit(std::string_view label = "anc");
  void free_qubit(Qubit q);

  BigInt read(const Quint& q) const;
  bool bit(Qubit q) const;
  bool is_definitely_zero(Qubit q) const { return !bit(q); }
  bool is_live(Qubit q) const { return q.id < live_.size() && live_[q.id] != 0; }
  std::string_view label(Qubit q) const;

  /// q ^= v. Honours the active control. Throws if v >= 2^len(q).
  void xor_constant(const Quint& q, const BigInt& v);

  // Primitive gates. These ignore the control context.
  void x(Qubit q);
  void cnot(Qubit control, Qubit target);
  void cz(Qubit a, Qubit b);
  /// t = c1 AND c2 into a zeroed t. One Toffoli.
  void apply_and(Qubit c1, Qubit c2, Qubit t);
  /// Clears t == c1 AND c2 by X-basis measurement plus CZ fixup. No Toffoli,
  /// one measurement.
  void uncompute_and(Qubit c1, Qubit c2, Qubit t);
  /// Fredkin gate. One Toffoli.
  void apply_cswap(Qubit c, Qubit a, Qubit b);
  /// Measures q in the X basis and resets it to 0. Returns the outcome.
  bool measure_x(Qubit q);

  /// Runs `body` with every controllable operation conditioned on `c`.
  /// Nested controls are combined into one AND ancilla.
  template <class Body>
  void with_control(Qubit c, Body&& body) {
    ControlFrame frame(*this, c);
    body();
  }

  /// The qubit controllable operations must condition on, if any.
  std::optional<Qubit> active_control() const;

  /// Hides the active control until destroyed. Used by operations that read
  /// the control once and then build the conditioned circuit themselves.
  class ControlSuspension {
   public:
    explicit ControlSuspension(SimState& sim);
    ~ControlSuspension();
    ControlSuspension(const ControlSuspension&) = delete;
    ControlSuspension& operator=(const ControlSuspension&) = delete;

   private:
    SimState& sim_;
  };

  const CostTally& tally() const { return tally_; }
  std::size_t live_qubits() const { return live_count_; }

  /// Precondition traps (register reads that verify contracts). On by default.
  void set_checks(bool enabled) { checks_ = enabled; }
  bool checks() const { return checks_; }

  void count_lookup() { ++tally_.lookups; }

 private:
  struct ControlEntry {
    std::optional<Qubit> control;
    bool owned = false;
    Qubit outer;
    Qubit inner;
  };

  class ControlFrame {
   public:
    ControlFrame(SimState& sim, Qubit c);
    ~ControlFrame();
    ControlFrame(const ControlFrame&) = delete;
    ControlFrame& operator=(const ControlFrame&) = delete;

   private:
    SimState& sim_;
  };

  void require_live(Qubit q) const;
  bool next_random_bit();
  std::uint32_t intern_label(std::string_view label);

  std::vector<std::uint8_t> bits_;
  std::vector<std::uint8_t> live_;
  std::vector<std::uint32_t> label_of_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> label_ids_;
  std::vector<std::uint32_t> free_ids_;
  std::size_t live_count_ = 0;

  std::mt19937_64 rng_;
  std::uint64_t random_word_ = 0;
  int random_bits_left_ = 0;

  CostTally tally_;
  std::vector<ControlEntry> controls_;
  bool checks_ = true;
};

}  // namespace winarith
