#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "winarith/big_int.h"
#include "winarith/cost_tally.h"

namespace winarith {

enum class Construction {
  kLookup,
  kUnlookup,
  kAdd,
  kModAdd,
  kProductAddClassical,
  kProductAddQubit,
  kProductAddWindowed,
  kTimesEqualWindowed,
  kProductAddModWindowed,
  kTimesEqualModWindowed,
  kModExpWindowed,
};

class UnknownConstruction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts the canonical names plus "product-add" and "modexp" shorthands.
Construction parse_construction(std::string_view name);
std::string_view construction_name(Construction c);
bool uses_window(Construction c);
bool uses_exponent(Construction c);
bool is_modular(Construction c);

/// Sizes and classical constants of one construction call.
///
/// `n` is the register size: len(y) for product additions, len(target) for
/// in-place multiplications and modular ops, the table size L for lookup and
/// unlookup, and the register size m for add/mod-add. Product additions
/// default to a 2n-qubit target.
struct OpDescriptor {
  Construction construction = Construction::kProductAddWindowed;
  std::size_t n = 0;
  std::optional<std::size_t> target_width;
  std::size_t n_e = 0;
  std::size_t w = 1;
  std::size_t w_e = 1;
  /// Classical multiplier. Unset means a generic constant: no early exit,
  /// and every bit set for the classical-iteration schoolbook variant.
  std::optional<BigInt> k;
  /// Modulus for modular constructions; used only to reduce k.
  std::optional<BigInt> modulus;
  /// Output width W of lookup/unlookup; defaults to 1.
  std::size_t output_width = 1;

  std::size_t target_size() const;
};

std::uint64_t lookup_cost(std::size_t table_size);
std::uint64_t unary_cost(std::size_t low_bits);
std::uint64_t unlookup_cost(std::size_t table_size);
std::uint64_t add_cost(std::size_t m);
std::uint64_t mod_add_cost(std::size_t n);

/// One lookup/add/unlookup group of a windowed construction.
struct WindowTerm {
  std::string label;
  std::uint64_t lookup = 0;
  std::uint64_t add = 0;
  std::uint64_t unlookup = 0;
  /// Number of identical groups folded into this term.
  std::uint64_t repeat = 1;

  std::uint64_t toffolis() const { return repeat * (lookup + add + unlookup); }
};

struct Prediction {
  CostTally tally;
  std::vector<WindowTerm> terms;
};

/// Exact Toffoli, lookup and measurement counts of the traced decomposition.
/// ancilla_high_water is left at 0 (traced only).
Prediction predict_detailed(const OpDescriptor& op);
CostTally predict(const OpDescriptor& op);

struct WindowChoice {
  std::size_t w = 1;
  std::size_t w_e = 1;
  std::uint64_t toffolis = 0;
};

/// Argmin of predicted Toffolis over w in 1..max_window (and w_e for modexp,
/// joint grid). Ties go to the smaller window (then the smaller w_e).
/// Windows that would exceed the table cap are skipped.
WindowChoice optimize_window(Construction c, std::size_t n, std::optional<std::size_t> n_e = std::nullopt,
                             std::size_t max_window = 20);

}  // namespace winarith
