#pragma once

#include <cstdint>
#include <iosfwd>

namespace winarith {

/// Running resource counts for one simulation.
///
/// Toffolis follow the AND-gadget convention: computing a logical AND or
/// applying a Fredkin costs one, uncomputing an AND by measurement costs zero
/// (and one measurement). X and CNOT are free.
struct CostTally {
  std::uint64_t toffolis = 0;
  std::uint64_t ancilla_high_water = 0;
  std::uint64_t measurements = 0;
  std::uint64_t lookups = 0;

  bool operator==(const CostTally&) const = default;
};

using CostSnapshot = CostTally;

inline CostSnapshot snapshot(const CostTally& tally) { return tally; }

/// Componentwise `later - earlier`. Throws PreconditionError if `later`
/// does not follow `earlier` (some component decreased).
CostTally diff(const CostSnapshot& earlier, const CostSnapshot& later);

std::ostream& operator<<(std::ostream& out, const CostTally& tally);

}  // namespace winarith
