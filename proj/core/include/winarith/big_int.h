#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace winarith {

using BigInt = boost::multiprecision::cpp_int;

/// Number of bits needed to write `v` (0 for v == 0). Negative values are rejected.
std::size_t bit_length(const BigInt& v);

/// Smallest l with 2^l >= v. ceil_lg(0) == ceil_lg(1) == 0.
std::size_t ceil_lg(std::size_t v);
std::size_t ceil_lg(const BigInt& v);

BigInt pow2(std::size_t exponent);

/// v mod 2^bits for non-negative v.
BigInt low_bits(const BigInt& v, std::size_t bits);

std::size_t popcount(const BigInt& v);

/// Parity of popcount(a AND b), computed limb-wise.
bool parity_of_and(const BigInt& a, const BigInt& b);

/// Packs little-endian bits into an integer.
BigInt from_bits(std::span<const std::uint8_t> bits);

/// Calls fn(i) for each set bit i < limit, in increasing order.
template <class Fn>
void for_each_set_bit(const BigInt& v, std::size_t limit, Fn&& fn) {
  const auto& backend = v.backend();
  const auto* limbs = backend.limbs();
  constexpr std::size_t kLimbBits = sizeof(*limbs) * 8;
  for (std::size_t li = 0; li < backend.size(); ++li) {
    auto word = static_cast<std::uint64_t>(limbs[li]);
    while (word != 0) {
      std::size_t bit = li * kLimbBits + static_cast<std::size_t>(std::countr_zero(word));
      if (bit >= limit) {
        return;
      }
      fn(bit);
      word &= word - 1;
    }
  }
}

}  // namespace winarith
