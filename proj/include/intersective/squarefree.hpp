#pragma once

#include <string>
#include <vector>

#include "intersective/arith.hpp"
#include "intersective/errors.hpp"
#include "intersective/primes.hpp"

namespace intersective {

// Values are capped at 2^40 in magnitude so that products of desk-scale
// subsets stay exact in 128 bits.
inline constexpr i64 kMaxMemberMagnitude = i64(1) << 40;

// A validated square-free integer with its full factorization.
// Invariant: value = sign * (2 if has_factor_two else 1) * prod(odd_primes),
// with odd_primes strictly increasing and each entry prime.
struct SquareFreeInt {
  i64 value = 0;
  int sign = 1;
  bool has_factor_two = false;
  std::vector<u64> odd_primes;

  bool divisible_by(u64 p) const { return mod_reduce(value, p) == 0; }
  u64 residue_mod8() const { return mod_reduce(value, 8); }
};

inline SquareFreeInt make_squarefree(i64 n) {
  if (n == 0 || n == 1) fail(errc::disallowed_value, "value must not be 0 or 1");
  if (n > kMaxMemberMagnitude || n < -kMaxMemberMagnitude)
    fail(errc::out_of_range, "magnitude exceeds 2^40: " + std::to_string(n));

  SquareFreeInt r;
  r.value = n;
  r.sign = n < 0 ? -1 : 1;
  const u64 mag = static_cast<u64>(n < 0 ? -n : n);
  for (const auto& [p, e] : factorize(mag)) {
    if (e > 1)
      fail(errc::not_square_free,
           std::to_string(n) + " is divisible by " + std::to_string(p) + "^2");
    if (p == 2)
      r.has_factor_two = true;
    else
      r.odd_primes.push_back(p);
  }

  // Re-verify the record: each factor prime, re-multiplication exact.
  u128 prod = r.has_factor_two ? 2 : 1;
  for (u64 p : r.odd_primes) {
    if (p == 2 || !is_prime(p)) fail(errc::not_prime, "factor failed primality re-check");
    prod *= p;
  }
  if (prod != u128(mag)) fail(errc::unfactorable, "factor re-multiplication mismatch");
  return r;
}

}  // namespace intersective
