#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string_view>

#include "erc20graph/bytes.hpp"

namespace erc20graph {

namespace detail {

inline constexpr std::array<std::uint64_t, 24> kKeccakRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

inline constexpr std::array<int, 25> kKeccakRotations = {
    0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14};

constexpr std::uint64_t rotl64(std::uint64_t x, int n) noexcept {
  return n == 0 ? x : (x << n) | (x >> (64 - n));
}

// Keccak-f[1600]; lanes indexed as state[x + 5 * y].
inline void keccak_f1600(std::array<std::uint64_t, 25>& state) noexcept {
  for (std::uint64_t rc : kKeccakRoundConstants) {
    std::array<std::uint64_t, 5> c{};
    for (int x = 0; x < 5; ++x)
      c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
    for (int x = 0; x < 5; ++x) {
      std::uint64_t d = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
      for (int y = 0; y < 25; y += 5) state[x + y] ^= d;
    }
    // rho + pi
    std::array<std::uint64_t, 25> b{};
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y)
        b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl64(state[x + 5 * y], kKeccakRotations[x + 5 * y]);
    // chi
    for (int y = 0; y < 25; y += 5)
      for (int x = 0; x < 5; ++x)
        state[x + y] = b[x + y] ^ (~b[(x + 1) % 5 + y] & b[(x + 2) % 5 + y]);
    state[0] ^= rc;
  }
}

inline std::uint64_t load_le64(const std::uint8_t* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

// Original Keccak-256 (0x01 domain padding), as used by Ethereum; not FIPS SHA3-256.
inline Hash32 keccak256(std::string_view input) noexcept {
  constexpr std::size_t kRate = 136;
  std::array<std::uint64_t, 25> state{};
  const auto* data = reinterpret_cast<const std::uint8_t*>(input.data());
  std::size_t len = input.size();

  while (len >= kRate) {
    for (std::size_t i = 0; i < kRate / 8; ++i) state[i] ^= detail::load_le64(data + 8 * i);
    detail::keccak_f1600(state);
    data += kRate;
    len -= kRate;
  }

  std::array<std::uint8_t, kRate> block{};
  std::memcpy(block.data(), data, len);
  block[len] ^= 0x01;
  block[kRate - 1] ^= 0x80;
  for (std::size_t i = 0; i < kRate / 8; ++i) state[i] ^= detail::load_le64(block.data() + 8 * i);
  detail::keccak_f1600(state);

  Hash32 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      out.bytes[8 * i + j] = static_cast<std::uint8_t>(state[i] >> (8 * j));
  return out;
}

}  // namespace erc20graph
