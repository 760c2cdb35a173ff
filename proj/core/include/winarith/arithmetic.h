#pragma once

#include <optional>

#include "winarith/big_int.h"
#include "winarith/sim_state.h"

namespace winarith {

/// target += addend (mod 2^len(target)) with a temporary-AND ripple-carry
/// adder: len(target) - 1 Toffolis whenever the addend is non-empty. Carries
/// run to the top of target even when the addend is shorter.
///
/// Under a control context the addend is first masked with one AND per bit.
void add_into(SimState& sim, const Quint& target, const Quint& addend);
/// target -= addend (mod 2^len(target)); same cost as add_into.
void sub_into(SimState& sim, const Quint& target, const Quint& addend);

/// target += k (mod 2^len(target)) for 0 <= k < 2^len(target). Uncontrolled,
/// k is loaded into scratch with X gates (len - 1 Toffolis). Under a control
/// context it becomes a lookup of [0, k] addressed by the control, so the
/// cost is 1 + (len - 1). k == 0 is free.
void add_constant_into(SimState& sim, const Quint& target, const BigInt& k);

/// target = (target + addend) mod N. Widens target by one qubit, adds,
/// subtracts N, adds N back under the sign bit, then clears the sign bit by
/// comparing the result against the addend. 5n - 1 Toffolis for n = len(target).
/// Requires read(target) < N, read(addend) < N and len(addend) <= n.
void mod_add_into(SimState& sim, const QuintMod& target, const Quint& addend);
/// target = (target - addend) mod N; the gate-reverse of mod_add_into.
void mod_sub_into(SimState& sim, const QuintMod& target, const Quint& addend);

/// Exchanges two equal-length disjoint registers with three CNOTs per pair
/// (one Fredkin per pair under a control context).
void swap_registers(SimState& sim, const Quint& a, const Quint& b);

/// Inverse of k modulo n by extended Euclid; nullopt when gcd(k, n) != 1.
std::optional<BigInt> modinv(const BigInt& k, const BigInt& n);
BigInt pow_mod(const BigInt& base, const BigInt& exponent, const BigInt& modulus);

}  // namespace winarith
