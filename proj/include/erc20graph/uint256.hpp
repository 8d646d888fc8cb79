#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "erc20graph/bytes.hpp"

namespace erc20graph {

using UInt256 = boost::multiprecision::uint256_t;
// Unbounded; used for sums of raw token amounts.
using BigUInt = boost::multiprecision::cpp_int;

// Big-endian 32-byte word to integer.
inline UInt256 uint256_from_word(const Hash32& word) {
  UInt256 v;
  boost::multiprecision::import_bits(v, word.bytes.begin(), word.bytes.end(), 8, true);
  return v;
}

inline Hash32 word_from_uint256(const UInt256& v) {
  Hash32 w;
  UInt256 x = v;
  for (int i = 31; i >= 0; --i) {
    w.bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x & 0xff);
    x >>= 8;
  }
  return w;
}

// Decimal digits only, no sign, no leading '+'. Returns nullopt on a bad
// digit or when the value does not fit in 256 bits.
inline std::optional<UInt256> parse_uint256_decimal(std::string_view s) {
  if (s.empty() || s.size() > 78) return std::nullopt;
  if (s.size() <= 19) {
    std::uint64_t small = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), small);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return UInt256(small);
  }
  using Wide = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
      320, 320, boost::multiprecision::unsigned_magnitude, boost::multiprecision::unchecked, void>>;
  Wide acc = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    acc = acc * 10 + static_cast<unsigned>(c - '0');
  }
  if (acc > Wide(std::numeric_limits<UInt256>::max())) return std::nullopt;
  return static_cast<UInt256>(acc);
}

template <typename Int>
std::string to_decimal(const Int& v) {
  return v.str();
}

}  // namespace erc20graph
