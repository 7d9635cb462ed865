#pragma once

#include <unordered_map>
#include <utility>

#include "intersective/arith.hpp"
#include "intersective/errors.hpp"
#include "intersective/primes.hpp"

namespace intersective {

// Jacobi symbol (a/n) for odd positive n, by binary reciprocity.
// Equals the Legendre symbol whenever n is prime.
inline int jacobi(i64 a, u64 n) {
  if (n == 0 || n % 2 == 0) fail(errc::invalid_argument, "jacobi modulus must be odd and positive");
  u64 x = mod_reduce(a, n);
  int sign = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const u64 r = n & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(x, n);
    if ((x & 3) == 3 && (n & 3) == 3) sign = -sign;
    x %= n;
  }
  return n == 1 ? sign : 0;
}

// Legendre symbol (a/p): 0 when p | a, +1 when a is a nonzero square mod p,
// -1 otherwise. Rejects p that is even or fails the primality check.
inline int legendre(i64 a, u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(errc::not_prime, "legendre modulus must be an odd prime");
  return jacobi(a, p);
}

// Memo for symbol evaluations and primality tests; shared across the families
// of one search pool, where the same (value, prime) pairs recur constantly.
// Read-mostly: lookups dominate, inserts are idempotent.
struct EvalCache {
  struct PairHash {
    std::size_t operator()(const std::pair<i64, u64>& k) const {
      const u64 h = static_cast<u64>(k.first) * 0x9e3779b97f4a7c15ULL;
      return static_cast<std::size_t>(h ^ (k.second + (h >> 31)));
    }
  };
  std::unordered_map<std::pair<i64, u64>, int, PairHash> symbols;
  std::unordered_map<u64, bool> prime;
};

inline int jacobi_cached(i64 a, u64 n, EvalCache* cache) {
  if (!cache) return jacobi(a, n);
  const auto key = std::make_pair(a, n);
  if (auto it = cache->symbols.find(key); it != cache->symbols.end()) return it->second;
  const int v = jacobi(a, n);
  cache->symbols.emplace(key, v);
  return v;
}

inline bool is_prime_cached(u64 n, EvalCache* cache) {
  if (!cache) return is_prime(n);
  if (auto it = cache->prime.find(n); it != cache->prime.end()) return it->second;
  const bool v = is_prime(n);
  cache->prime.emplace(n, v);
  return v;
}

}  // namespace intersective
