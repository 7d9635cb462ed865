#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "intersective/arith.hpp"
#include "intersective/errors.hpp"

namespace intersective {

// Deterministic Miller-Rabin; this witness set is exact for all n < 2^64.
inline bool is_prime(u64 n) {
  constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : witnesses) {
    if (n % p == 0) return n == p;
  }
  const int s = std::countr_zero(n - 1);
  const u64 d = (n - 1) >> s;
  for (u64 a : witnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimeFactor {
  u64 prime;
  int exponent;
  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

inline constexpr u64 kTrialDivisionBound = u64(1) << 20;

namespace detail {

// Brent's cycle variant of Pollard rho with f(x) = x^2 + c. Deterministic:
// x0 = 2 and c = 1, 2, 3, ... Returns a nontrivial factor of composite n.
inline u64 brent_rho(u64 n, u64& budget) {
  for (u64 c = 1; c < 64; ++c) {
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0, r = 1;
    const auto step = [&](u64 v) { return static_cast<u64>((u128(v) * v + c) % n); };
    while (d == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && d == 1; k += 128) {
        ys = y;
        const u64 lim = std::min<u64>(128, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        if (budget < lim) fail(errc::unfactorable, "factorization budget exhausted");
        budget -= lim;
        d = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      // The batched gcd overshot; replay single steps from the saved point.
      do {
        ys = step(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
  fail(errc::unfactorable, "rho failed to split composite");
}

}  // namespace detail

// Trial division up to 2^20, then rho on any remaining composite cofactor.
// Every reported prime passes is_prime. Sorted by prime.
inline std::vector<PrimeFactor> factorize(u64 n) {
  if (n == 0) fail(errc::invalid_argument, "cannot factor 0");
  std::map<u64, int> found;
  for (u64 d = 2; d <= kTrialDivisionBound && d * d <= n; d = (d == 2 ? 3 : d + 2)) {
    while (n % d == 0) {
      n /= d;
      ++found[d];
    }
  }
  if (n > 1) {
    u64 budget = u64(1) << 28;
    std::vector<u64> pending{n};
    while (!pending.empty()) {
      const u64 v = pending.back();
      pending.pop_back();
      if (is_prime(v)) {
        ++found[v];
        continue;
      }
      const u64 f = detail::brent_rho(v, budget);
      pending.push_back(f);
      pending.push_back(v / f);
    }
  }
  std::vector<PrimeFactor> out;
  out.reserve(found.size());
  for (auto [p, e] : found) out.push_back({p, e});
  return out;
}

inline std::vector<u64> primes_up_to(u64 n) {
  std::vector<bool> sieve(n + 1, true);
  std::vector<u64> primes;
  for (u64 p = 2; p <= n; ++p) {
    if (!sieve[p]) continue;
    primes.push_back(p);
    for (u64 q = p * p; q <= n; q += p) sieve[q] = false;
  }
  return primes;
}

struct PrimePower {
  u64 prime;
  int exponent;
  u64 modulus;  // prime^exponent, <= 2^63
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline PrimePower make_prime_power(u64 prime, int exponent) {
  if (exponent < 1) fail(errc::invalid_argument, "exponent must be >= 1");
  if (!is_prime(prime)) fail(errc::not_prime, "base of a prime power must be prime");
  const auto m = checked_pow(prime, exponent, kMaxModulus);
  if (!m) fail(errc::overflow, "prime power exceeds 2^63");
  return {prime, exponent, *m};
}

}  // namespace intersective
