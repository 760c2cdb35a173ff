#pragma once

#include <cstddef>

#include "winarith/big_int.h"
#include "winarith/sim_state.h"

namespace winarith {

/// Window sizes for the windowed constructions. `exponent` is only read by
/// times_equal_exp_mod.
struct WindowConfig {
  std::size_t multiplication = 1;
  std::size_t exponent = 1;
};

// Product addition: target += k * y (mod 2^len(target)).

/// Schoolbook: one addition of y into target[i:] per set bit i of k.
void plus_equal_product_classical_iter(SimState& sim, const Quint& target, const BigInt& k, const Quint& y);
/// One lookup-controlled constant addition per qubit of y.
void plus_equal_product_qubit_iter(SimState& sim, const Quint& target, const BigInt& k, const Quint& y);
/// Per window of w qubits of y: look up j*k, add into target[i:], unlookup.
void plus_equal_product_windowed(SimState& sim, const Quint& target, const BigInt& k, const Quint& y,
                                 std::size_t window);

/// target *= k (mod 2^len(target)) for odd k, windows processed from the most
/// significant down, each fixed up by a window-1 recursive call.
void times_equal_windowed(SimState& sim, const Quint& target, const BigInt& k, std::size_t window);

/// target += k * y (mod N) with the position factor 2^i folded into each table.
void plus_equal_product_mod_windowed(SimState& sim, const QuintMod& target, const BigInt& k, const Quint& y,
                                     std::size_t window);

/// target *= k (mod N): b += a*k, a -= b*k^-1, swap, release b.
void times_equal_mod_windowed(SimState& sim, const QuintMod& target, const BigInt& k, std::size_t window);

/// target *= k^e (mod N). Each exponent window runs two modular product-addition
/// passes whose lookups are addressed jointly by the exponent window (high bits)
/// and the multiplication window (low bits), then relabels the registers.
void times_equal_exp_mod(SimState& sim, const QuintMod& target, const BigInt& k, const Quint& exponent,
                         const WindowConfig& windows);

}  // namespace winarith
