#include "winarith/windowed.h"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "winarith/arithmetic.h"
#include "winarith/errors.h"
#include "winarith/lookup.h"
#include "winarith/lookup_table.h"

namespace winarith {
namespace {

void require_uncontrolled(const SimState& sim, const char* what) {
  if (sim.active_control()) {
    throw PreconditionError(std::string(what) + " does not support a control context");
  }
}

void require_window(std::size_t window) {
  if (window == 0) {
    throw PreconditionError("window size must be at least 1");
  }
}

// target += table[address] through a temporary as wide as target.
void add_lookup(SimState& sim, const Quint& target, const LookupTable& table, const Quint& address) {
  Quint scratch = sim.qalloc(target.size(), "lookup_out");
  LookupTable fitted = table.truncated(target.size());
  xor_lookup(sim, address, fitted, scratch);
  add_into(sim, target, scratch);
  unlookup(sim, address, fitted, scratch);
  sim.qfree(scratch);
}

void mod_add_lookup(SimState& sim, const QuintMod& target, const LookupTable& table, const Quint& address,
                    bool subtract) {
  Quint scratch = sim.qalloc(target.reg.size(), "lookup_out");
  xor_lookup(sim, address, table, scratch);
  if (subtract) {
    mod_sub_into(sim, target, scratch);
  } else {
    mod_add_into(sim, target, scratch);
  }
  unlookup(sim, address, table, scratch);
  sim.qfree(scratch);
}

BigInt reduce(const BigInt& v, const BigInt& modulus) {
  BigInt r = v % modulus;
  if (r < 0) r += modulus;
  return r;
}

// f * base mod N for f in [0, count), by repeated modular addition.
std::vector<BigInt> multiples_mod(const BigInt& base, std::size_t count, const BigInt& modulus) {
  std::vector<BigInt> out;
  out.reserve(count);
  BigInt acc = 0;
  for (std::size_t f = 0; f < count; ++f) {
    out.push_back(acc);
    acc += base;
    if (acc >= modulus) acc -= modulus;
  }
  return out;
}

void require_nonnegative(const BigInt& k) {
  if (k < 0) {
    throw PreconditionError("negative classical constants are not supported");
  }
}

void mod_product_add(SimState& sim, const QuintMod& target, const BigInt& k, const Quint& y,
                     std::size_t window, bool subtract) {
  const BigInt& N = target.modulus;
  BigInt kk = reduce(k, N);
  if (kk == 0 || target.reg.empty()) {
    return;
  }
  for (std::size_t i = 0; i < y.size(); i += window) {
    Quint w = y.slice(i, i + window);
    check_table_bits(w.size());
    BigInt base = reduce(kk * pow2(i), N);
    LookupTable table(multiples_mod(base, std::size_t{1} << w.size(), N), target.reg.size());
    mod_add_lookup(sim, target, table, w, subtract);
  }
}

}  // namespace

void plus_equal_product_classical_iter(SimState& sim, const Quint& target, const BigInt& k, const Quint& y) {
  require_uncontrolled(sim, "plus_equal_product_classical_iter");
  require_nonnegative(k);
  const BigInt kk = low_bits(k, target.size());
  for_each_set_bit(kk, target.size(), [&](std::size_t i) {
    Quint slice = target.slice_from(i);
    add_into(sim, slice, y.slice(0, slice.size()));
  });
}

void plus_equal_product_qubit_iter(SimState& sim, const Quint& target, const BigInt& k, const Quint& y) {
  require_uncontrolled(sim, "plus_equal_product_qubit_iter");
  require_nonnegative(k);
  const BigInt kk = low_bits(k, target.size());
  if (kk == 0) {
    return;
  }
  for (std::size_t i = 0; i < y.size() && i < target.size(); ++i) {
    Quint slice = target.slice_from(i);
    BigInt term = low_bits(kk, slice.size());
    sim.with_control(y[i], [&] { add_constant_into(sim, slice, term); });
  }
}

void plus_equal_product_windowed(SimState& sim, const Quint& target, const BigInt& k, const Quint& y,
                                 std::size_t window) {
  require_uncontrolled(sim, "plus_equal_product_windowed");
  require_nonnegative(k);
  require_window(window);
  const BigInt kk = low_bits(k, target.size());
  if (kk == 0) {
    return;
  }
  std::optional<LookupTable> full;
  for (std::size_t i = 0; i < y.size() && i < target.size(); i += window) {
    Quint w = y.slice(i, i + window);
    check_table_bits(w.size());
    const std::size_t entries = std::size_t{1} << w.size();
    if (!full || full->size() != entries) {
      std::vector<BigInt> products;
      products.reserve(entries);
      BigInt acc = 0;
      for (std::size_t j = 0; j < entries; ++j) {
        products.push_back(acc);
        acc += kk;
      }
      full.emplace(std::move(products));
    }
    add_lookup(sim, target.slice_from(i), *full, w);
  }
}

void times_equal_windowed(SimState& sim, const Quint& target, const BigInt& k, std::size_t window) {
  require_uncontrolled(sim, "times_equal_windowed");
  require_nonnegative(k);
  require_window(window);
  const std::size_t n = target.size();
  const BigInt kk = low_bits(k, n);
  if (n == 0) {
    return;
  }
  if ((kk & 1) == 0) {
    throw PreconditionError("times_equal_windowed: k must be odd");
  }
  if (kk == 1) {
    return;
  }
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; i += window) starts.push_back(i);
  std::optional<LookupTable> table;
  for (auto it = starts.rbegin(); it != starts.rend(); ++it) {
    const std::size_t i = *it;
    Quint w = target.slice(i, i + window);
    Quint rest = target.slice_from(i + window);
    if (!rest.empty()) {
      if (!table) {
        check_table_bits(window);
        std::vector<BigInt> shifted;
        shifted.reserve(std::size_t{1} << window);
        for (std::size_t j = 0; j < (std::size_t{1} << window); ++j) {
          shifted.push_back((kk * j) >> window);
        }
        table.emplace(std::move(shifted));
      }
      add_lookup(sim, rest, *table, w);
    }
    times_equal_windowed(sim, w, kk, 1);
  }
}

void plus_equal_product_mod_windowed(SimState& sim, const QuintMod& target, const BigInt& k, const Quint& y,
                                     std::size_t window) {
  require_uncontrolled(sim, "plus_equal_product_mod_windowed");
  require_nonnegative(k);
  require_window(window);
  mod_product_add(sim, target, k, y, window, false);
}

void times_equal_mod_windowed(SimState& sim, const QuintMod& target, const BigInt& k, std::size_t window) {
  require_uncontrolled(sim, "times_equal_mod_windowed");
  require_nonnegative(k);
  require_window(window);
  const BigInt& N = target.modulus;
  auto inverse = modinv(k, N);
  if (!inverse) {
    throw PreconditionError("times_equal_mod_windowed: k is not invertible modulo N");
  }
  QuintMod b = sim.qalloc_mod(N, "mul_out");
  mod_product_add(sim, b, k, target.reg, window, false);
  mod_product_add(sim, target, *inverse, b.reg, window, true);
  swap_registers(sim, target.reg, b.reg);
  sim.qfree(b.reg);
}

void times_equal_exp_mod(SimState& sim, const QuintMod& target, const BigInt& k, const Quint& exponent,
                         const WindowConfig& windows) {
  require_uncontrolled(sim, "times_equal_exp_mod");
  require_nonnegative(k);
  require_window(windows.exponent);
  require_window(windows.multiplication);
  const BigInt& N = target.modulus;
  if ((N & 1) == 0) {
    throw PreconditionError("times_equal_exp_mod: modulus must be odd");
  }
  if (!modinv(k, N)) {
    throw PreconditionError("times_equal_exp_mod: k is not invertible modulo N");
  }
  check_table_bits(std::min(windows.exponent, exponent.size()) + std::min(windows.multiplication, target.reg.size()));
  const std::size_t n = target.reg.size();

  QuintMod a = target;
  QuintMod b = sim.qalloc_mod(N, "exp_work");
  bool relabeled = false;

  for (std::size_t i = 0; i < exponent.size(); i += windows.exponent) {
    Quint ei = exponent.slice(i, i + windows.exponent);
    const std::size_t exp_rows = std::size_t{1} << ei.size();
    std::vector<BigInt> kes;
    std::vector<BigInt> kes_inv;
    kes.reserve(exp_rows);
    kes_inv.reserve(exp_rows);
    const BigInt step = pow_mod(k, pow2(i), N);
    BigInt acc = reduce(BigInt(1), N);
    for (std::size_t x = 0; x < exp_rows; ++x) {
      kes.push_back(acc);
      kes_inv.push_back(*modinv(acc, N));
      acc = (acc * step) % N;
    }

    // b += a * k_e: (x, 0) -> (x, x k_e).
    // a -= b * k_e^-1: (x, x k_e) -> (0, x k_e).
    for (int pass = 0; pass < 2; ++pass) {
      const std::vector<BigInt>& factors = pass == 0 ? kes : kes_inv;
      const QuintMod& source = pass == 0 ? a : b;
      const QuintMod& dest = pass == 0 ? b : a;
      for (std::size_t j = 0; j < n; j += windows.multiplication) {
        Quint mi = source.reg.slice(j, j + windows.multiplication);
        std::vector<std::vector<BigInt>> rows;
        rows.reserve(exp_rows);
        for (const BigInt& factor : factors) {
          rows.push_back(multiples_mod((factor * pow2(j)) % N, std::size_t{1} << mi.size(), N));
        }
        LookupTable table = LookupTable::from_rows(rows, mi.size(), n);
        mod_add_lookup(sim, dest, table, Quint::join(mi, ei), pass == 1);
      }
    }
    std::swap(a, b);
    relabeled = !relabeled;
  }

  if (relabeled) {
    swap_registers(sim, a.reg, b.reg);
    std::swap(a, b);
  }
  sim.qfree(b.reg);
}

}  // namespace winarith
