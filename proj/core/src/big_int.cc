#include "winarith/big_int.h"

#include <stdexcept>

namespace winarith {

std::size_t bit_length(const BigInt& v) {
  if (v < 0) {
    throw std::invalid_argument("bit_length of a negative integer");
  }
  if (v == 0) {
    return 0;
  }
  return static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

std::size_t ceil_lg(std::size_t v) {
  if (v <= 1) {
    return 0;
  }
  return static_cast<std::size_t>(std::bit_width(v - 1));
}

std::size_t ceil_lg(const BigInt& v) {
  if (v <= 1) {
    return 0;
  }
  return bit_length(v - 1);
}

BigInt pow2(std::size_t exponent) {
  BigInt r = 1;
  r <<= exponent;
  return r;
}

BigInt low_bits(const BigInt& v, std::size_t bits) {
  BigInt mask = pow2(bits) - 1;
  return v & mask;
}

std::size_t popcount(const BigInt& v) {
  std::size_t n = 0;
  const auto& backend = v.backend();
  for (std::size_t i = 0; i < backend.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(backend.limbs()[i])));
  }
  return n;
}

bool parity_of_and(const BigInt& a, const BigInt& b) {
  const auto& x = a.backend();
  const auto& y = b.backend();
  std::size_t n = std::min(x.size(), y.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc ^= static_cast<std::uint64_t>(x.limbs()[i]) & static_cast<std::uint64_t>(y.limbs()[i]);
  }
  return (std::popcount(acc) & 1) != 0;
}

BigInt from_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint64_t> words((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      words[i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  BigInt r;
  if (!words.empty()) {
    boost::multiprecision::import_bits(r, words.begin(), words.end(), 64, false);
  }
  return r;
}

}  // namespace winarith
