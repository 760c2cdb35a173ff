#include "winarith/arithmetic.h"

#include "winarith/errors.h"
#include "winarith/lookup.h"
#include "winarith/lookup_table.h"

namespace winarith {
namespace {

void require_disjoint(const SimState& sim, const Quint& a, const Quint& b, const char* what) {
  if (sim.checks() && overlaps(a, b)) {
    throw PreconditionError(std::string(what) + ": registers overlap");
  }
}

// Temporary-AND ripple-carry adder. c[i] is the carry into bit i; a missing
// addend bit is a constant 0. Carries are uncomputed by measurement.
void add_core(SimState& sim, const Quint& target, const Quint& addend) {
  const std::size_t m = target.size();
  const std::size_t k = addend.size();
  if (m == 0 || k == 0) {
    return;
  }
  if (m == 1) {
    sim.cnot(addend[0], target[0]);
    return;
  }
  std::vector<Qubit> carry(m);
  for (std::size_t i = 1; i < m; ++i) {
    carry[i] = sim.alloc_qubit("carry");
  }
  // carry[i+1] = maj(a_i, t_i, carry[i]); a_i and t_i temporarily hold a^c, t^c.
  sim.apply_and(addend[0], target[0], carry[1]);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (i < k) {
      sim.cnot(carry[i], addend[i]);
      sim.cnot(carry[i], target[i]);
      sim.apply_and(addend[i], target[i], carry[i + 1]);
    } else {
      sim.cnot(carry[i], target[i]);
      sim.apply_and(carry[i], target[i], carry[i + 1]);
    }
    sim.cnot(carry[i], carry[i + 1]);
  }
  const std::size_t top = m - 1;
  if (top < k) {
    sim.cnot(addend[top], target[top]);
  }
  sim.cnot(carry[top], target[top]);
  for (std::size_t i = m - 1; i-- > 1;) {
    sim.cnot(carry[i], carry[i + 1]);
    if (i < k) {
      sim.uncompute_and(addend[i], target[i], carry[i + 1]);
      sim.cnot(carry[i], addend[i]);
      sim.cnot(addend[i], target[i]);
    } else {
      sim.uncompute_and(carry[i], target[i], carry[i + 1]);
    }
  }
  sim.uncompute_and(addend[0], target[0], carry[1]);
  sim.cnot(addend[0], target[0]);
  for (std::size_t i = m; i-- > 1;) {
    sim.free_qubit(carry[i]);
  }
}

void complement(SimState& sim, const Quint& q) {
  for (Qubit b : q.qubits()) sim.x(b);
}

void sub_core(SimState& sim, const Quint& target, const Quint& addend) {
  complement(sim, target);
  add_core(sim, target, addend);
  complement(sim, target);
}

void add_constant_core(SimState& sim, const Quint& target, const BigInt& k, std::optional<Qubit> control) {
  if (k == 0 || target.empty()) {
    return;
  }
  if (!control) {
    Quint scratch = sim.qalloc(bit_length(k), "constant");
    sim.xor_constant(scratch, k);
    add_core(sim, target, scratch);
    sim.xor_constant(scratch, k);
    sim.qfree(scratch);
    return;
  }
  // Controlled constant addition as an addition of lookup([0, k])[control].
  Quint address({*control});
  LookupTable table({BigInt(0), k}, target.size());
  Quint scratch = sim.qalloc(target.size(), "lookup_out");
  xor_lookup(sim, address, table, scratch);
  add_core(sim, target, scratch);
  unlookup(sim, address, table, scratch);
  sim.qfree(scratch);
}

void masked_add(SimState& sim, const Quint& target, const Quint& addend, Qubit control, bool subtract) {
  Quint masked = sim.qalloc(addend.size(), "masked_addend");
  for (std::size_t i = 0; i < addend.size(); ++i) {
    sim.apply_and(control, addend[i], masked[i]);
  }
  if (subtract) {
    sub_core(sim, target, masked);
  } else {
    add_core(sim, target, masked);
  }
  for (std::size_t i = addend.size(); i-- > 0;) {
    sim.uncompute_and(control, addend[i], masked[i]);
  }
  sim.qfree(masked);
}

void check_mod_operands(const SimState& sim, const QuintMod& target, const Quint& addend) {
  if (addend.size() > target.reg.size()) {
    throw PreconditionError("modular addend wider than the modulus register");
  }
  require_disjoint(sim, target.reg, addend, "mod_add_into");
  if (sim.checks()) {
    if (sim.read(target.reg) >= target.modulus) {
      throw PreconditionError("modular target is not reduced");
    }
    if (sim.read(addend) >= target.modulus) {
      throw PreconditionError("modular addend is not below the modulus");
    }
  }
  if (sim.active_control()) {
    throw PreconditionError("modular addition does not support a control context");
  }
}

}  // namespace

void add_into(SimState& sim, const Quint& target, const Quint& addend) {
  if (addend.size() > target.size()) {
    throw PreconditionError("add_into: addend wider than target");
  }
  require_disjoint(sim, target, addend, "add_into");
  auto control = sim.active_control();
  SimState::ControlSuspension suspend(sim);
  if (control) {
    masked_add(sim, target, addend, *control, false);
  } else {
    add_core(sim, target, addend);
  }
}

void sub_into(SimState& sim, const Quint& target, const Quint& addend) {
  if (addend.size() > target.size()) {
    throw PreconditionError("sub_into: addend wider than target");
  }
  require_disjoint(sim, target, addend, "sub_into");
  auto control = sim.active_control();
  SimState::ControlSuspension suspend(sim);
  if (control) {
    masked_add(sim, target, addend, *control, true);
  } else {
    sub_core(sim, target, addend);
  }
}

void add_constant_into(SimState& sim, const Quint& target, const BigInt& k) {
  if (k < 0 || bit_length(k) > target.size()) {
    throw PreconditionError("add_constant_into: constant outside [0, 2^len)");
  }
  auto control = sim.active_control();
  SimState::ControlSuspension suspend(sim);
  add_constant_core(sim, target, k, control);
}

void mod_add_into(SimState& sim, const QuintMod& target, const Quint& addend) {
  check_mod_operands(sim, target, addend);
  const std::size_t n = target.reg.size();
  if (n == 0) {
    return;
  }
  const BigInt& N = target.modulus;
  Qubit top = sim.alloc_qubit("mod_sign");
  Quint wide = Quint::join(target.reg, Quint({top}));
  add_core(sim, wide, addend);
  add_constant_core(sim, wide, pow2(n + 1) - N, std::nullopt);
  add_constant_core(sim, target.reg, N, top);
  // top == [result >= addend]; subtracting the addend flips it to 1.
  sub_core(sim, wide, addend);
  sim.x(top);
  add_core(sim, target.reg, addend);
  sim.free_qubit(top);
}

void mod_sub_into(SimState& sim, const QuintMod& target, const Quint& addend) {
  check_mod_operands(sim, target, addend);
  const std::size_t n = target.reg.size();
  if (n == 0) {
    return;
  }
  const BigInt& N = target.modulus;
  Qubit top = sim.alloc_qubit("mod_sign");
  Quint wide = Quint::join(target.reg, Quint({top}));
  sub_core(sim, target.reg, addend);
  sim.x(top);
  add_core(sim, wide, addend);
  add_constant_core(sim, target.reg, pow2(n) - N, top);
  add_constant_core(sim, wide, N, std::nullopt);
  sub_core(sim, wide, addend);
  sim.free_qubit(top);
}

void swap_registers(SimState& sim, const Quint& a, const Quint& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("swap_registers: length mismatch");
  }
  require_disjoint(sim, a, b, "swap_registers");
  auto control = sim.active_control();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (control) {
      sim.apply_cswap(*control, a[i], b[i]);
    } else {
      sim.cnot(a[i], b[i]);
      sim.cnot(b[i], a[i]);
      sim.cnot(a[i], b[i]);
    }
  }
}

std::optional<BigInt> modinv(const BigInt& k, const BigInt& n) {
  if (n < 1) {
    throw PreconditionError("modinv: modulus must be positive");
  }
  if (n == 1) {
    return BigInt(0);
  }
  BigInt r0 = n;
  BigInt r1 = k % n;
  if (r1 < 0) r1 += n;
  BigInt s0 = 0;
  BigInt s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) {
    return std::nullopt;
  }
  s0 %= n;
  if (s0 < 0) s0 += n;
  return s0;
}

BigInt pow_mod(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus < 1 || exponent < 0) {
    throw PreconditionError("pow_mod: modulus must be positive and exponent non-negative");
  }
  if (modulus == 1) {
    return 0;
  }
  BigInt b = base % modulus;
  if (b < 0) b += modulus;
  return boost::multiprecision::powm(b, exponent, modulus);
}

}  // namespace winarith
