#include "winarith/cost_model.h"

#include <algorithm>
#include <array>
#include <limits>

#include "winarith/errors.h"
#include "winarith/lookup_table.h"

namespace winarith {
namespace {

struct NamedConstruction {
  std::string_view name;
  Construction construction;
};

constexpr std::array<NamedConstruction, 11> kNames{{
    {"lookup", Construction::kLookup},
    {"unlookup", Construction::kUnlookup},
    {"add", Construction::kAdd},
    {"mod-add", Construction::kModAdd},
    {"product-add-classical", Construction::kProductAddClassical},
    {"product-add-qubit", Construction::kProductAddQubit},
    {"product-add-windowed", Construction::kProductAddWindowed},
    {"times-equal-windowed", Construction::kTimesEqualWindowed},
    {"product-add-mod-windowed", Construction::kProductAddModWindowed},
    {"times-equal-mod-windowed", Construction::kTimesEqualModWindowed},
    {"modexp-windowed", Construction::kModExpWindowed},
}};

// Accumulates terms and the tally that goes with them.
class Builder {
 public:
  // One xor_lookup, one add of `add_toffolis` (with `inner_lookups` lookups
  // and `inner_measured` unlookup-measured qubits of its own), one unlookup
  // measuring `width` qubits.
  void group(std::string label, std::size_t table_size, std::uint64_t add_toffolis, std::size_t width,
             std::uint64_t repeat = 1, std::uint64_t inner_lookups = 0, std::uint64_t inner_measured = 0) {
    if (repeat == 0) return;
    WindowTerm term{std::move(label), lookup_cost(table_size), add_toffolis, unlookup_cost(table_size), repeat};
    out_.tally.lookups += repeat * (1 + inner_lookups);
    measured_ += repeat * (width + inner_measured);
    out_.tally.toffolis += term.toffolis();
    out_.terms.push_back(std::move(term));
  }

  void plain(std::string label, std::uint64_t toffolis, std::uint64_t lookups = 0, std::uint64_t measured = 0) {
    WindowTerm term{std::move(label), 0, toffolis, 0, 1};
    out_.tally.lookups += lookups;
    measured_ += measured;
    out_.tally.toffolis += toffolis;
    out_.terms.push_back(std::move(term));
  }

  Prediction finish() {
    out_.tally.measurements = out_.tally.toffolis + measured_;
    return std::move(out_);
  }

 private:
  Prediction out_;
  std::uint64_t measured_ = 0;
};

std::string window_label(std::size_t i, std::size_t w) {
  return "window i=" + std::to_string(i) + " w=" + std::to_string(w);
}

BigInt generic_k(const OpDescriptor& op, std::size_t width) {
  if (op.k) {
    if (*op.k < 0) throw PreconditionError("negative classical constants are not supported");
    return *op.k;
  }
  return pow2(width) - 1;
}

bool modular_k_is_zero(const OpDescriptor& op) {
  if (!op.k) return false;
  if (*op.k < 0) throw PreconditionError("negative classical constants are not supported");
  if (op.modulus) return *op.k % *op.modulus == 0;
  return *op.k == 0;
}

void require_window(std::size_t w) {
  if (w == 0) throw PreconditionError("window size must be at least 1");
}

// Window-1 fixup inside times_equal on a `bits`-qubit window.
void times_equal_fixup(Builder& b, std::size_t bits, const BigInt& k) {
  if (low_bits(k, bits) == 1) return;
  for (std::size_t j = 0; j + 1 < bits; ++j) {
    std::size_t rest = bits - j - 1;
    b.group("fixup j=" + std::to_string(j), 2, add_cost(rest), rest);
  }
}

void mod_product_add(Builder& b, std::size_t n, std::size_t y_len, std::size_t w, const std::string& prefix) {
  std::size_t full = y_len / w;
  std::size_t tail = y_len % w;
  b.group(prefix + "windows w=" + std::to_string(w), std::size_t{1} << std::min(w, y_len), mod_add_cost(n), n,
          full, 1, n);
  if (tail != 0) {
    b.group(prefix + "window i=" + std::to_string(full * w) + " w=" + std::to_string(tail), std::size_t{1} << tail,
            mod_add_cost(n), n, 1, 1, n);
  }
}

}  // namespace

Construction parse_construction(std::string_view name) {
  if (name == "product-add") return Construction::kProductAddWindowed;
  if (name == "modexp") return Construction::kModExpWindowed;
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.construction;
  }
  throw UnknownConstruction("unknown construction: " + std::string(name));
}

std::string_view construction_name(Construction c) {
  for (const auto& entry : kNames) {
    if (entry.construction == c) return entry.name;
  }
  return "unknown";
}

bool uses_window(Construction c) {
  switch (c) {
    case Construction::kProductAddWindowed:
    case Construction::kTimesEqualWindowed:
    case Construction::kProductAddModWindowed:
    case Construction::kTimesEqualModWindowed:
    case Construction::kModExpWindowed:
      return true;
    default:
      return false;
  }
}

bool uses_exponent(Construction c) { return c == Construction::kModExpWindowed; }

bool is_modular(Construction c) {
  switch (c) {
    case Construction::kModAdd:
    case Construction::kProductAddModWindowed:
    case Construction::kTimesEqualModWindowed:
    case Construction::kModExpWindowed:
      return true;
    default:
      return false;
  }
}

std::size_t OpDescriptor::target_size() const {
  if (target_width) return *target_width;
  switch (construction) {
    case Construction::kProductAddClassical:
    case Construction::kProductAddQubit:
    case Construction::kProductAddWindowed:
      return 2 * n;
    default:
      return n;
  }
}

std::uint64_t lookup_cost(std::size_t table_size) { return table_size == 0 ? 0 : table_size - 1; }

std::uint64_t unary_cost(std::size_t low_bits) {
  return (std::uint64_t{1} << low_bits) - low_bits - 1;
}

std::uint64_t unlookup_cost(std::size_t table_size) {
  if (table_size == 0) return 0;
  std::size_t nb = ceil_lg(table_size);
  std::size_t l = unlookup_low_bits(table_size);
  return unary_cost(l) + (std::uint64_t{1} << (nb - l)) - 1;
}

std::uint64_t add_cost(std::size_t m) { return m == 0 ? 0 : m - 1; }

std::uint64_t mod_add_cost(std::size_t n) { return n == 0 ? 0 : 5 * static_cast<std::uint64_t>(n) - 1; }

Prediction predict_detailed(const OpDescriptor& op) {
  Builder b;
  const std::size_t n = op.n;
  const std::size_t m = op.target_size();
  switch (op.construction) {
    case Construction::kLookup: {
      if (n == 0) throw PreconditionError("lookup needs at least one table entry");
      b.plain("lookup L=" + std::to_string(n), lookup_cost(n), 1);
      break;
    }
    case Construction::kUnlookup: {
      if (n == 0) throw PreconditionError("unlookup needs at least one table entry");
      b.plain("unlookup L=" + std::to_string(n), unlookup_cost(n), 0, op.output_width);
      break;
    }
    case Construction::kAdd:
      b.plain("add m=" + std::to_string(n), add_cost(n));
      break;
    case Construction::kModAdd:
      if (n != 0) b.plain("mod-add n=" + std::to_string(n), mod_add_cost(n), 1, n);
      break;
    case Construction::kProductAddClassical: {
      if (n == 0) break;
      BigInt kk = low_bits(generic_k(op, m), m);
      for_each_set_bit(kk, m, [&](std::size_t i) { b.plain("bit i=" + std::to_string(i), add_cost(m - i)); });
      break;
    }
    case Construction::kProductAddQubit: {
      BigInt kk = low_bits(generic_k(op, m), m);
      if (kk == 0) break;
      for (std::size_t i = 0; i < n && i < m; ++i) {
        if (low_bits(kk, m - i) == 0) continue;
        b.group("qubit i=" + std::to_string(i), 2, add_cost(m - i), m - i);
      }
      break;
    }
    case Construction::kProductAddWindowed: {
      require_window(op.w);
      BigInt kk = low_bits(generic_k(op, m), m);
      if (kk == 0) break;
      for (std::size_t i = 0; i < n && i < m; i += op.w) {
        std::size_t wi = std::min(op.w, n - i);
        b.group(window_label(i, wi), std::size_t{1} << wi, add_cost(m - i), m - i);
      }
      break;
    }
    case Construction::kTimesEqualWindowed: {
      require_window(op.w);
      if (n == 0) break;
      BigInt kk = low_bits(generic_k(op, n), n);
      if ((kk & 1) == 0) throw PreconditionError("times_equal_windowed: k must be odd");
      if (kk == 1) break;
      std::vector<std::size_t> starts;
      for (std::size_t i = 0; i < n; i += op.w) starts.push_back(i);
      for (auto it = starts.rbegin(); it != starts.rend(); ++it) {
        std::size_t i = *it;
        std::size_t wi = std::min(op.w, n - i);
        if (i + op.w < n) {
          std::size_t rest = n - i - op.w;
          b.group(window_label(i, wi), std::size_t{1} << op.w, add_cost(rest), rest);
        }
        times_equal_fixup(b, wi, kk);
      }
      break;
    }
    case Construction::kProductAddModWindowed:
      require_window(op.w);
      if (n == 0 || modular_k_is_zero(op)) break;
      mod_product_add(b, n, n, op.w, "");
      break;
    case Construction::kTimesEqualModWindowed:
      require_window(op.w);
      if (n == 0) break;
      mod_product_add(b, n, n, op.w, "b+=a*k ");
      mod_product_add(b, n, n, op.w, "a-=b*k^-1 ");
      break;
    case Construction::kModExpWindowed: {
      require_window(op.w);
      require_window(op.w_e);
      if (n == 0) break;
      const std::size_t ne = op.n_e;
      const std::array<std::pair<std::size_t, std::size_t>, 2> e_groups{
          {{std::min(op.w_e, ne), ne / op.w_e}, {ne % op.w_e, ne % op.w_e == 0 ? 0 : 1}}};
      const std::array<std::pair<std::size_t, std::size_t>, 2> m_groups{
          {{std::min(op.w, n), n / op.w}, {n % op.w, n % op.w == 0 ? 0 : 1}}};
      for (const auto& [we, ecount] : e_groups) {
        for (const auto& [wm, mcount] : m_groups) {
          if (ecount == 0 || mcount == 0) continue;
          b.group("e-window w_e=" + std::to_string(we) + " x m-window w=" + std::to_string(wm),
                  std::size_t{1} << (we + wm), mod_add_cost(n), n, 2 * ecount * mcount, 1, n);
        }
      }
      break;
    }
  }
  return b.finish();
}

CostTally predict(const OpDescriptor& op) { return predict_detailed(op).tally; }

WindowChoice optimize_window(Construction c, std::size_t n, std::optional<std::size_t> n_e, std::size_t max_window) {
  if (n == 0) throw PreconditionError("optimize_window needs n >= 1");
  WindowChoice best;
  best.toffolis = std::numeric_limits<std::uint64_t>::max();
  const std::size_t cap_bits = ceil_lg(table_cap());
  OpDescriptor op;
  op.construction = c;
  op.n = n;
  op.n_e = n_e.value_or(2 * n);
  const std::size_t max_e = uses_exponent(c) ? max_window : 1;
  for (std::size_t w = 1; w <= std::max<std::size_t>(max_window, 1); ++w) {
    for (std::size_t we = 1; we <= max_e; ++we) {
      if (w + (uses_exponent(c) ? we : 0) > cap_bits) continue;
      op.w = w;
      op.w_e = we;
      std::uint64_t cost = predict(op).toffolis;
      if (cost < best.toffolis) {
        best = {w, we, cost};
      }
    }
  }
  if (best.toffolis == std::numeric_limits<std::uint64_t>::max()) best = {1, 1, 0};
  return best;
}

}  // namespace winarith
