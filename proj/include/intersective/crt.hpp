#pragma once

#include <numeric>
#include <span>

#include "intersective/arith.hpp"
#include "intersective/errors.hpp"

namespace intersective {

struct Congruence {
  u64 residue;
  u64 modulus;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

namespace detail {

// a^{-1} mod m for gcd(a, m) = 1, m >= 2.
inline u64 inv_mod(u64 a, u64 m) {
  i128 t = 0, nt = 1;
  i128 r = i128(m), nr = i128(a % m);
  while (nr != 0) {
    const i128 q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) fail(errc::non_coprime_moduli, "no modular inverse exists");
  if (t < 0) t += i128(m);
  return static_cast<u64>(t);
}

}  // namespace detail

// Combines congruences x = r_i (mod m_i) over pairwise coprime moduli into
// the unique x in [0, prod m_i). Rejects non-coprime moduli rather than
// solving the general case; the combined modulus must stay <= 2^63.
inline Congruence crt_combine(std::span<const Congruence> parts) {
  u64 r = 0, m = 1;
  for (const auto& part : parts) {
    if (part.modulus == 0) fail(errc::invalid_argument, "modulus must be >= 1");
    if (part.modulus == 1) continue;
    if (std::gcd(m, part.modulus) != 1)
      fail(errc::non_coprime_moduli, "moduli must be pairwise coprime");
    if (u128(m) * part.modulus > kMaxModulus)
      fail(errc::overflow, "combined modulus exceeds 2^63");
    const u64 mi = part.modulus;
    const u64 ri = part.residue % mi;
    // x = r + m*t with t chosen so x = ri (mod mi); then x < m*mi.
    const u64 t = mul_mod(sub_mod(ri, r % mi, mi), detail::inv_mod(m % mi, mi), mi);
    r += m * t;
    m *= mi;
  }
  return {r, m};
}

inline Congruence crt_combine(std::initializer_list<Congruence> parts) {
  return crt_combine(std::span<const Congruence>(parts.begin(), parts.size()));
}

}  // namespace intersective
