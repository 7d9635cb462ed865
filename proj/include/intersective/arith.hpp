#pragma once

#include <bit>
#include <cstdint>
#include <optional>

namespace intersective {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// All moduli in this library are <= 2^63, so 128-bit intermediates are exact.
inline constexpr u128 kMaxModulus = u128(1) << 63;

inline constexpr u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  u128 s = u128(a) + b;
  return static_cast<u64>(s >= m ? s - m : s);
}

// a, b < m
inline constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = (m == 1) ? 0 : 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Least nonnegative residue of a signed value.
inline constexpr u64 mod_reduce(i64 a, u64 m) {
  i128 r = i128(a) % i128(m);
  if (r < 0) r += i128(m);
  return static_cast<u64>(r);
}

inline constexpr int bit_width_u128(u128 v) {
  const u64 hi = static_cast<u64>(v >> 64);
  return hi ? 64 + std::bit_width(hi) : std::bit_width(static_cast<u64>(v));
}

// Floor square root by integer Newton iteration; no floating point.
inline constexpr u128 isqrt(u128 n) {
  if (n < 2) return n;
  u128 x = u128(1) << ((bit_width_u128(n) + 1) / 2);  // x >= sqrt(n)
  while (true) {
    u128 y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

inline constexpr bool is_perfect_square(i128 n) {
  if (n < 0) return false;
  const u128 r = isqrt(static_cast<u128>(n));
  return r * r == static_cast<u128>(n);
}

// base^exp, or nullopt when the result would exceed cap.
inline constexpr std::optional<u64> checked_pow(u64 base, int exp, u128 cap) {
  u128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > cap) return std::nullopt;
  }
  return static_cast<u64>(acc);
}

}  // namespace intersective
