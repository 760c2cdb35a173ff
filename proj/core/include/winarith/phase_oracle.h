#pragma once

#include <cstdint>

#include "winarith/lookup_table.h"

namespace winarith {

/// Runs the gate-level lookup then the full measurement-based unlookup on a
/// uniform superposition over the table's addresses and returns
/// |<final|initial>| on the address register. With force_zero_mask every
/// X measurement is postselected to 0. Throws QubitBudgetExceeded when the
/// circuit needs more than 16 qubits at once.
double verify_unlookup_roundtrip(const LookupTable& table, std::uint64_t seed, bool force_zero_mask = false);

}  // namespace winarith
