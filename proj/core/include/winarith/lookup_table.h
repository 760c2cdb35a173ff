#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "winarith/big_int.h"

namespace winarith {

/// Largest number of entries any construction may materialize.
/// Defaults to 2^26, or WINARITH_TABLE_CAP when that is set.
std::size_t table_cap();
void set_table_cap(std::size_t entries);
/// Throws TableTooLarge if `entries` exceeds table_cap().
void check_table_size(std::size_t entries);
void check_table_bits(std::size_t address_bits);

/// Classical table of L >= 1 non-negative entries, each below 2^W.
class LookupTable {
 public:
  /// W defaults to the widest entry.
  explicit LookupTable(std::vector<BigInt> entries, std::optional<std::size_t> output_width = std::nullopt);

  /// Two-level table addressed by [hi, lo]; every row must hold exactly
  /// 2^lo_width entries. Flat index is hi * 2^lo_width + lo.
  static LookupTable from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t lo_width,
                               std::optional<std::size_t> output_width = std::nullopt);

  std::size_t size() const { return entries_.size(); }
  std::size_t output_width() const { return output_width_; }
  std::size_t address_width() const { return ceil_lg(entries_.size()); }
  std::size_t low_width() const { return low_width_; }

  const BigInt& operator[](std::size_t i) const { return entries_[i]; }
  const BigInt& at(std::size_t hi, std::size_t lo) const;
  const std::vector<BigInt>& entries() const { return entries_; }

  /// Same table with every entry reduced mod 2^width.
  LookupTable truncated(std::size_t width) const;

 private:
  std::vector<BigInt> entries_;
  std::size_t output_width_ = 0;
  std::size_t low_width_ = 0;
};

/// Phase corrections for a measured-out lookup. Row h, bit j is the parity of
/// T[h * 2^low_bits + j] AND mask; addresses past the table contribute 0.
struct FixupTable {
  std::size_t low_bits = 0;
  std::vector<BigInt> rows;

  bool bit(std::size_t row, std::size_t column) const;
};

FixupTable compute_fixup_table(const LookupTable& table, const BigInt& mask, std::size_t low_bits);

/// Size l of the address half that is converted to unary during unlookup:
/// ceil(ceil_lg(L) / 2).
std::size_t unlookup_low_bits(std::size_t table_size);

}  // namespace winarith
