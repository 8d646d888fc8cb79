#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace erc20graph {

namespace detail {

constexpr int hex_nibble(char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

inline std::string_view strip_0x(std::string_view s) noexcept {
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  return s;
}

}  // namespace detail

// Fixed-width big-endian byte string (addresses, topics, hashes).
template <std::size_t N>
struct FixedBytes {
  std::array<std::uint8_t, N> bytes{};

  static constexpr std::size_t size() noexcept { return N; }

  // Accepts an optional 0x prefix and either hex case; exactly 2N digits.
  static std::optional<FixedBytes> from_hex(std::string_view s) noexcept {
    s = detail::strip_0x(s);
    if (s.size() != 2 * N) return std::nullopt;
    FixedBytes out;
    for (std::size_t i = 0; i < N; ++i) {
      int hi = detail::hex_nibble(s[2 * i]);
      int lo = detail::hex_nibble(s[2 * i + 1]);
      if (hi < 0 || lo < 0) return std::nullopt;
      out.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
  }

  // Lowercase, 0x-prefixed.
  std::string hex() const {
    std::string s(2 + 2 * N, '0');
    s[1] = 'x';
    for (std::size_t i = 0; i < N; ++i) {
      s[2 + 2 * i] = detail::kHexDigits[bytes[i] >> 4];
      s[3 + 2 * i] = detail::kHexDigits[bytes[i] & 0xf];
    }
    return s;
  }

  bool is_zero() const noexcept {
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
  }

  friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

using Address = FixedBytes<20>;
using Hash32 = FixedBytes<32>;

inline constexpr Address kNullAddress{};

// Low 20 bytes of a 32-byte word, if the high 12 bytes are zero.
inline std::optional<Address> address_from_word(const Hash32& word) noexcept {
  for (std::size_t i = 0; i < 12; ++i)
    if (word.bytes[i] != 0) return std::nullopt;
  Address a;
  std::memcpy(a.bytes.data(), word.bytes.data() + 12, 20);
  return a;
}

inline Hash32 word_from_address(const Address& a) noexcept {
  Hash32 w;
  std::memcpy(w.bytes.data() + 12, a.bytes.data(), 20);
  return w;
}

// Decodes a 0x-prefixed hex byte string of any even length.
inline std::optional<std::string> bytes_from_hex(std::string_view s) {
  s = detail::strip_0x(s);
  if (s.size() % 2 != 0) return std::nullopt;
  std::string out(s.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = detail::hex_nibble(s[2 * i]);
    int lo = detail::hex_nibble(s[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<char>((hi << 4) | lo);
  }
  return out;
}

inline std::string hex_from_bytes(std::string_view raw) {
  std::string s = "0x";
  s.reserve(2 + raw.size() * 2);
  for (unsigned char c : raw) {
    s.push_back(detail::kHexDigits[c >> 4]);
    s.push_back(detail::kHexDigits[c & 0xf]);
  }
  return s;
}

}  // namespace erc20graph

template <std::size_t N>
struct std::hash<erc20graph::FixedBytes<N>> {
  std::size_t operator()(const erc20graph::FixedBytes<N>& b) const noexcept {
    std::uint64_t h = 0, head = 0;
    std::memcpy(&h, b.bytes.data() + N - 8, 8);
    std::memcpy(&head, b.bytes.data(), 8);
    h ^= head * 0x9e3779b97f4a7c15ULL;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};
