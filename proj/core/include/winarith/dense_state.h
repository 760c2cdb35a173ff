#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "winarith/big_int.h"
#include "winarith/sim_state.h"

namespace winarith {

class QubitBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class GateKind { kX, kCnot, kToffoli, kCswap, kH, kCz, kZ };

/// Dense amplitude simulator for at most kMaxQubits live qubits. Implements
/// the same gate-sink surface as SimState so the lookup templates run on it
/// unchanged, plus H and Z.
class DenseState {
 public:
  static constexpr bool kTracksPhase = true;
  static constexpr std::size_t kMaxQubits = 16;
  using Amplitude = std::complex<double>;

  explicit DenseState(std::uint64_t seed = 0);

  Qubit alloc_qubit(std::string_view label = "anc");
  /// Throws NonZeroRelease unless the qubit is |0> in every branch.
  void free_qubit(Qubit q);
  std::size_t live_qubits() const { return positions_.size(); }

  void x(Qubit q);
  void z(Qubit q);
  void h(Qubit q);
  void cnot(Qubit control, Qubit target);
  void cz(Qubit a, Qubit b);
  void toffoli(Qubit c1, Qubit c2, Qubit t);
  void apply_cswap(Qubit c, Qubit a, Qubit b);
  /// Toffoli into a target that must be |0>.
  void apply_and(Qubit c1, Qubit c2, Qubit t);
  /// X-measures t and applies CZ(c1, c2) on outcome 1.
  void uncompute_and(Qubit c1, Qubit c2, Qubit t);
  void apply_gate(GateKind gate, std::span<const Qubit> qubits);

  /// Born-rule sample; collapses and renormalizes. The qubit stays live.
  bool measure_z(Qubit q);
  /// H, measure_z, then X on outcome 1 so the qubit is left in |0>.
  bool measure_x(Qubit q);
  /// While set, every measurement postselects this outcome instead of sampling.
  void force_outcomes(std::optional<bool> outcome) { forced_ = outcome; }

  bool is_definitely_zero(Qubit q) const;
  double probability_one(Qubit q) const;
  double norm() const;

  /// Replaces the whole state with sum_v amps[v] |v> on `qubits`, all other
  /// live qubits |0>. amps.size() must be 2^len(qubits).
  void set_state(std::span<const Qubit> qubits, std::span<const Amplitude> amps);
  /// Amplitudes over `qubits` when every other live qubit is |0>.
  std::vector<Amplitude> amplitudes(std::span<const Qubit> qubits) const;
  /// The basis value of `qubits` when the state is a single basis state.
  std::optional<BigInt> basis_value(std::span<const Qubit> qubits) const;

 private:
  std::size_t pos(Qubit q) const;
  std::uint64_t mask(Qubit q) const { return std::uint64_t{1} << pos(q); }
  bool measure(Qubit q);

  std::vector<Amplitude> amps_;
  std::vector<std::uint32_t> positions_;    // position -> qubit id
  std::vector<std::int32_t> position_of_;   // qubit id -> position, -1 if free
  std::vector<std::uint32_t> free_ids_;
  std::mt19937_64 rng_;
  std::optional<bool> forced_;
};

}  // namespace winarith
