#include "winarith/cost_tally.h"

#include <ostream>

#include "winarith/errors.h"

namespace winarith {

CostTally diff(const CostSnapshot& earlier, const CostSnapshot& later) {
  if (later.toffolis < earlier.toffolis || later.ancilla_high_water < earlier.ancilla_high_water ||
      later.measurements < earlier.measurements || later.lookups < earlier.lookups) {
    throw PreconditionError("diff: second snapshot precedes the first");
  }
  return CostTally{
      later.toffolis - earlier.toffolis,
      later.ancilla_high_water - earlier.ancilla_high_water,
      later.measurements - earlier.measurements,
      later.lookups - earlier.lookups,
  };
}

std::ostream& operator<<(std::ostream& out, const CostTally& tally) {
  return out << "toffolis=" << tally.toffolis << " ancilla_high_water=" << tally.ancilla_high_water
             << " measurements=" << tally.measurements << " lookups=" << tally.lookups;
}

}  // namespace winarith
