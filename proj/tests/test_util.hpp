#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "intersective/intersective.hpp"

// Slow, independent oracles for cross-checking. These deliberately avoid the
// library's fast paths: squaring scans instead of Euler/reciprocity, direct
// evaluation instead of CRT assembly, binary-search square roots instead of
// Newton.
namespace testutil {

using intersective::i128;
using intersective::i64;
using intersective::u128;
using intersective::u64;

template <class F>
std::optional<intersective::errc> code_of(F&& f) {
  try {
    (void)std::forward<F>(f)();
  } catch (const intersective::error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Legendre symbol by exhaustive squaring; p a small odd prime.
inline int slow_legendre(i64 a, u64 p) {
  const u64 r = ((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
  if (r == 0) return 0;
  for (u64 x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

// All square roots of a mod m by scanning.
inline std::vector<u64> slow_sqrts(i64 a, u64 m) {
  std::vector<u64> roots;
  const u64 r = ((a % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m);
  for (u64 x = 0; x < m; ++x)
    if (u128(x) * x % m == r) roots.push_back(x);
  return roots;
}

inline bool slow_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Does prod(x^2 - a_i) vanish mod m for some x? Direct evaluation.
inline std::optional<u64> slow_root(const std::vector<i64>& values, u64 m) {
  for (u64 x = 0; x < m; ++x) {
    i128 prod = 1;
    for (i64 a : values) {
      prod = (prod * ((i128(x) * x - a) % i128(m))) % i128(m);
    }
    if (prod % i128(m) == 0) return x;
  }
  return std::nullopt;
}

inline u64 slow_isqrt(u128 n) {
  u64 lo = 0, hi = u64(1) << 40;
  while (lo < hi) {
    const u64 mid = lo + (hi - lo + 1) / 2;
    if (u128(mid) * mid <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline bool slow_is_square(i128 n) {
  if (n < 0) return false;
  const u64 r = slow_isqrt(static_cast<u128>(n));
  return u128(r) * r == static_cast<u128>(n);
}

// All odd-cardinality subsets with square product, by 2^n enumeration,
// sorted by cardinality then lexicographically on the index lists.
inline std::vector<std::vector<int>> slow_odd_square_subsets(const std::vector<i64>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    if (std::popcount(mask) % 2 != 1) continue;
    i128 prod = 1;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        prod *= values[static_cast<size_t>(i)];
        idx.push_back(i + 1);
      }
    }
    if (slow_is_square(prod)) out.push_back(std::move(idx));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace testutil
