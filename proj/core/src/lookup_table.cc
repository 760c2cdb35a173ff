#include "winarith/lookup_table.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "winarith/errors.h"

namespace winarith {
namespace {

std::size_t initial_cap() {
  if (const char* env = std::getenv("WINARITH_TABLE_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      // Fall through to the default on garbage.
    }
  }
  return std::size_t{1} << 26;
}

std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{initial_cap()};
  return cap;
}

}  // namespace

std::size_t table_cap() { return cap_storage().load(); }

void set_table_cap(std::size_t entries) { cap_storage().store(entries); }

void check_table_size(std::size_t entries) {
  if (entries > table_cap()) {
    throw TableTooLarge("table of " + std::to_string(entries) + " entries exceeds cap of " +
                        std::to_string(table_cap()));
  }
}

void check_table_bits(std::size_t address_bits) {
  if (address_bits >= 63) {
    throw TableTooLarge("table address of " + std::to_string(address_bits) + " bits");
  }
  check_table_size(std::size_t{1} << address_bits);
}

LookupTable::LookupTable(std::vector<BigInt> entries, std::optional<std::size_t> output_width)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw PreconditionError("lookup table needs at least one entry");
  }
  check_table_size(entries_.size());
  std::size_t widest = 0;
  for (const BigInt& e : entries_) {
    if (e < 0) {
      throw PreconditionError("lookup table entries must be non-negative");
    }
    widest = std::max(widest, bit_length(e));
  }
  if (output_width && *output_width < widest) {
    throw PreconditionError("lookup table entry wider than the declared output width");
  }
  output_width_ = output_width.value_or(widest);
}

LookupTable LookupTable::from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t lo_width,
                                   std::optional<std::size_t> output_width) {
  std::vector<BigInt> flat;
  const std::size_t row_len = std::size_t{1} << lo_width;
  flat.reserve(rows.size() * row_len);
  for (const auto& row : rows) {
    if (row.size() != row_len) {
      throw PreconditionError("lookup table row length must be 2^lo_width");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  LookupTable t(std::move(flat), output_width);
  t.low_width_ = lo_width;
  return t;
}

const BigInt& LookupTable::at(std::size_t hi, std::size_t lo) const {
  if (lo >= (std::size_t{1} << low_width_)) {
    throw TableOutOfBounds("low index outside the row");
  }
  std::size_t index = (hi << low_width_) + lo;
  if (index >= entries_.size()) {
    throw TableOutOfBounds("table index " + std::to_string(index) + " >= " + std::to_string(entries_.size()));
  }
  return entries_[index];
}

LookupTable LookupTable::truncated(std::size_t width) const {
  if (width >= output_width_) {
    return *this;
  }
  std::vector<BigInt> reduced;
  reduced.reserve(entries_.size());
  for (const BigInt& e : entries_) {
    reduced.push_back(low_bits(e, width));
  }
  LookupTable t(std::move(reduced), width);
  t.low_width_ = low_width_;
  return t;
}

bool FixupTable::bit(std::size_t row, std::size_t column) const {
  return boost::multiprecision::bit_test(rows.at(row), static_cast<unsigned>(column));
}

FixupTable compute_fixup_table(const LookupTable& table, const BigInt& mask, std::size_t low_bits) {
  if (mask < 0 || bit_length(mask) > table.output_width()) {
    throw PreconditionError("fixup mask wider than the table output");
  }
  const std::size_t address_bits = table.address_width();
  const std::size_t high_bits = address_bits > low_bits ? address_bits - low_bits : 0;
  const std::size_t row_len = std::size_t{1} << low_bits;
  FixupTable fixup;
  fixup.low_bits = low_bits;
  fixup.rows.assign(std::size_t{1} << high_bits, BigInt(0));
  if (mask == 0) {
    return fixup;
  }
  for (std::size_t a = 0; a < table.size(); ++a) {
    if (parity_of_and(table[a], mask)) {
      boost::multiprecision::bit_set(fixup.rows[a / row_len], static_cast<unsigned>(a % row_len));
    }
  }
  return fixup;
}

std::size_t unlookup_low_bits(std::size_t table_size) { return (ceil_lg(table_size) + 1) / 2; }

}  // namespace winarith
