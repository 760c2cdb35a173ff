#pragma once

#include <optional>

#include "winarith/lookup_table.h"
#include "winarith/sim_state.h"

namespace winarith {

/// target ^= table[read(address)], conditioned on `control` (or the active
/// control context). Exactly table.size() - 1 Toffolis; address unchanged.
/// Throws TableOutOfBounds when the address value is not below table.size().
void xor_lookup(SimState& sim, const Quint& address, const LookupTable& table, const Quint& target,
                std::optional<Qubit> control = std::nullopt);

/// Measurement-based uncomputation of a lookup. `target` must hold
/// table[read(address)]; it is left zeroed (the caller frees it).
/// Toffolis: (2^l - l - 1) + (2^(lg L - l) - 1) with l = ceil(lg L / 2).
void unlookup(SimState& sim, const Quint& address, const LookupTable& table, const Quint& target);

/// One-hot encodes `binary` into zeroed `unary` (len 2^len(binary)).
void init_unary(SimState& sim, const Quint& binary, const Quint& unary);
/// Measurement-based inverse of init_unary. No Toffolis.
void clear_unary(SimState& sim, const Quint& binary, const Quint& unary);

bool overlaps(const Quint& a, const Quint& b);

}  // namespace winarith
