#include "winarith/phase_oracle.h"

#include <cmath>
#include <complex>
#include <vector>

#include "winarith/dense_state.h"
#include "winarith/lookup_circuits.h"

namespace winarith {

double verify_unlookup_roundtrip(const LookupTable& table, std::uint64_t seed, bool force_zero_mask) {
  DenseState state(seed);
  const std::size_t nb = table.address_width();
  std::vector<Qubit> address;
  for (std::size_t i = 0; i < nb; ++i) address.push_back(state.alloc_qubit("address"));
  std::vector<Qubit> target;
  for (std::size_t i = 0; i < table.output_width(); ++i) target.push_back(state.alloc_qubit("target"));

  std::vector<DenseState::Amplitude> initial(std::size_t{1} << nb, DenseState::Amplitude(0.0));
  const double amp = 1.0 / std::sqrt(static_cast<double>(table.size()));
  for (std::size_t a = 0; a < table.size(); ++a) {
    // Distinct phases so a wrong relative sign cannot cancel out.
    initial[a] = std::polar(amp, 0.37 * static_cast<double>(a));
  }
  state.set_state(address, initial);

  xor_lookup_gates(state, std::span<const Qubit>(address), table, std::span<const Qubit>(target));
  if (force_zero_mask) state.force_outcomes(false);
  unlookup_gates(state, std::span<const Qubit>(address), table, std::span<const Qubit>(target));
  state.force_outcomes(std::nullopt);
  for (std::size_t i = target.size(); i-- > 0;) state.free_qubit(target[i]);

  std::vector<DenseState::Amplitude> final_amps = state.amplitudes(address);
  DenseState::Amplitude overlap(0.0);
  for (std::size_t v = 0; v < initial.size(); ++v) overlap += std::conj(final_amps[v]) * initial[v];
  return std::abs(overlap);
}

}  // namespace winarith
