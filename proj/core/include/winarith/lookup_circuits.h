#pragma once

// Gate-level table lookup, unary conversion and measurement-based unlookup,
// written once against a gate sink so the basis-state simulator and the dense
// phase oracle execute the identical gate sequence.

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "winarith/big_int.h"
#include "winarith/lookup_table.h"
#include "winarith/sim_state.h"

namespace winarith {

template <class G>
concept GateSink = requires(G g, Qubit q, std::string_view label) {
  { g.alloc_qubit(label) } -> std::same_as<Qubit>;
  g.free_qubit(q);
  g.x(q);
  g.cnot(q, q);
  g.cz(q, q);
  g.apply_and(q, q, q);
  g.uncompute_and(q, q, q);
  g.apply_cswap(q, q, q);
  { g.measure_x(q) } -> std::convertible_to<bool>;
  { g.is_definitely_zero(q) } -> std::convertible_to<bool>;
  { G::kTracksPhase } -> std::convertible_to<bool>;
};

namespace detail {

// Leaves in [start, min(start + 2^(bit+1), count)) are reached when `control`
// is set. Each split whose right half is non-empty costs one AND; splits whose
// right half lies past the table reuse the parent control.
template <GateSink G, class Leaf>
void unary_iterate_rec(G& g, Qubit control, std::span<const Qubit> address, int bit, std::size_t start,
                       std::size_t count, Leaf& leaf) {
  if (bit < 0) {
    leaf(start, control);
    return;
  }
  const std::size_t mid = start + (std::size_t{1} << bit);
  if (mid >= count) {
    unary_iterate_rec(g, control, address, bit - 1, start, count, leaf);
    return;
  }
  const Qubit a = address[static_cast<std::size_t>(bit)];
  const Qubit child = g.alloc_qubit("unary_iter");
  g.x(a);
  g.apply_and(control, a, child);
  g.x(a);
  unary_iterate_rec(g, child, address, bit - 1, start, count, leaf);
  g.cnot(control, child);
  unary_iterate_rec(g, child, address, bit - 1, mid, count, leaf);
  g.uncompute_and(control, a, child);
  g.free_qubit(child);
}

}  // namespace detail

/// Calls leaf(index, leaf_control) for index = 0..count-1, where leaf_control
/// is set iff `control` is set and the low ceil_lg(count) address bits equal
/// index. Costs exactly count - 1 ANDs.
template <GateSink G, class Leaf>
void unary_iterate(G& g, Qubit control, std::span<const Qubit> address, std::size_t count, Leaf&& leaf) {
  const int bits = static_cast<int>(ceil_lg(count));
  detail::unary_iterate_rec(g, control, address, bits - 1, 0, count, leaf);
}

/// target ^= table[address], conditioned on `control` when given. An
/// uncontrolled lookup roots its cascade on a fresh qubit set by X, so both
/// forms cost table.size() - 1 Toffolis.
template <GateSink G>
void xor_lookup_gates(G& g, std::span<const Qubit> address, const LookupTable& table,
                      std::span<const Qubit> target, std::optional<Qubit> control = std::nullopt) {
  Qubit root;
  if (control) {
    root = *control;
  } else {
    root = g.alloc_qubit("lookup_root");
    g.x(root);
  }
  unary_iterate(g, root, address, table.size(), [&](std::size_t index, Qubit leaf_control) {
    if (g.is_definitely_zero(leaf_control)) {
      return;
    }
    for_each_set_bit(table[index], target.size(), [&](std::size_t b) { g.cnot(leaf_control, target[b]); });
  });
  if (!control) {
    g.x(root);
    g.free_qubit(root);
  }
}

/// One-hot encodes `binary` (l qubits) into a zeroed `unary` (2^l qubits).
///
/// Level i moves the marker up by 2^i when binary[i] is set. The first 2^i - 1
/// pairs use Fredkins; the last pair is recovered from parity, since binary[i]
/// equals the XOR of the freshly filled upper half. Costs 2^l - l - 1.
template <GateSink G>
void init_unary_gates(G& g, std::span<const Qubit> binary, std::span<const Qubit> unary) {
  g.x(unary[0]);
  for (std::size_t i = 0; i < binary.size(); ++i) {
    const std::size_t half = std::size_t{1} << i;
    const std::size_t last = half - 1;
    for (std::size_t j = 0; j < last; ++j) {
      g.apply_cswap(binary[i], unary[j], unary[j + half]);
    }
    g.cnot(binary[i], unary[last + half]);
    for (std::size_t j = 0; j < last; ++j) {
      g.cnot(unary[j + half], unary[last + half]);
    }
    g.cnot(unary[last + half], unary[last]);
  }
}

/// Inverse of init_unary_gates using measurement-based AND uncomputation.
/// No Toffolis; one measurement per Fredkin of the forward circuit.
template <GateSink G>
void clear_unary_gates(G& g, std::span<const Qubit> binary, std::span<const Qubit> unary) {
  for (std::size_t i = binary.size(); i-- > 0;) {
    const std::size_t half = std::size_t{1} << i;
    const std::size_t last = half - 1;
    g.cnot(unary[last + half], unary[last]);
    for (std::size_t j = 0; j < last; ++j) {
      g.cnot(unary[j + half], unary[last + half]);
    }
    g.cnot(binary[i], unary[last + half]);
    for (std::size_t j = last; j-- > 0;) {
      g.cnot(unary[j + half], unary[j]);
      g.uncompute_and(binary[i], unary[j], unary[j + half]);
    }
  }
  g.x(unary[0]);
}

/// Clears `target` (holding table[address]) by X-basis measurement and undoes
/// the resulting address phases with a lookup over the high address bits
/// targeting the H-conjugated unary form of the low bits. Returns the mask of
/// measurement outcomes. Target qubits are left zeroed, not released.
template <GateSink G>
BigInt unlookup_gates(G& g, std::span<const Qubit> address, const LookupTable& table,
                      std::span<const Qubit> target) {
  std::vector<std::uint8_t> outcomes(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    outcomes[i] = g.measure_x(target[i]) ? 1 : 0;
  }
  BigInt mask = from_bits(outcomes);
  if (bit_length(mask) > table.output_width()) {
    // Qubits above the table width always hold 0, so their outcome is
    // irrelevant to the phase.
    mask = low_bits(mask, table.output_width());
  }

  const std::size_t address_bits = table.address_width();
  const std::size_t low = unlookup_low_bits(table.size());
  const std::size_t high = address_bits - low;
  FixupTable fixup = compute_fixup_table(table, mask, low);
  LookupTable fixup_lookup(fixup.rows, std::size_t{1} << low);

  std::vector<Qubit> unary;
  unary.reserve(std::size_t{1} << low);
  for (std::size_t j = 0; j < (std::size_t{1} << low); ++j) {
    unary.push_back(g.alloc_qubit("unlookup_unary"));
  }
  auto low_address = address.subspan(0, low);
  auto high_address = address.subspan(low, high);
  init_unary_gates(g, low_address, std::span<const Qubit>(unary));
  if constexpr (G::kTracksPhase) {
    for (Qubit u : unary) g.h(u);
    xor_lookup_gates(g, high_address, fixup_lookup, std::span<const Qubit>(unary));
    for (Qubit u : unary) g.h(u);
  } else {
    // Conjugated by H the fixup lookup only changes phases, which a basis
    // state cannot carry; run its cascade for the gate and cost trace.
    Qubit root = g.alloc_qubit("lookup_root");
    g.x(root);
    unary_iterate(g, root, high_address, fixup_lookup.size(), [](std::size_t, Qubit) {});
    g.x(root);
    g.free_qubit(root);
  }
  clear_unary_gates(g, low_address, std::span<const Qubit>(unary));
  for (std::size_t j = unary.size(); j-- > 0;) {
    g.free_qubit(unary[j]);
  }
  return mask;
}

}  // namespace winarith
