#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "intersective/family.hpp"
#include "intersective/symbols.hpp"

namespace intersective {

// Coordinate list for exponent-parity vectors: an implicit leading sign
// coordinate, then one coordinate per prime in the order given here.
struct ExponentBasis {
  std::vector<u64> primes;
};

// Canonical basis for a family: odd primes ascending, then the prime 2.
// The product of a subset must be a square in Z, so sign parity and the
// parity of the exponent of 2 both get coordinates.
inline ExponentBasis family_basis(const Family& f) {
  ExponentBasis b;
  b.primes = family_odd_primes(f);
  b.primes.push_back(2);
  return b;
}

// Exponent-parity vector of a over the basis: entry 0 is the sign bit,
// entry 1+i is 1 iff basis.primes[i] divides a.
inline std::vector<std::uint8_t> exponent_vector(const SquareFreeInt& a, const ExponentBasis& basis) {
  std::vector<std::uint8_t> v(basis.primes.size() + 1, 0);
  v[0] = a.sign < 0 ? 1 : 0;
  const auto coord = [&](u64 p) {
    const auto it = std::find(basis.primes.begin(), basis.primes.end(), p);
    if (it == basis.primes.end())
      fail(errc::basis_missing_prime, "basis lacks prime " + std::to_string(p));
    v[1 + static_cast<std::size_t>(it - basis.primes.begin())] = 1;
  };
  if (a.has_factor_two) coord(2);
  for (u64 p : a.odd_primes) coord(p);
  return v;
}

// Exact square test of a subset product. Uses the 128-bit product when it
// fits; otherwise falls back to exponent parities of the validated
// factorizations, which is exact for any magnitude.
inline bool subset_product_is_square(const Family& f, std::uint32_t mask) {
  i128 prod = 1;
  bool fits = true;
  for (int i = 0; i < f.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    const i64 v = f.members[static_cast<size_t>(i)].value;
    if (fits) {
      prod *= i128(v);
      const i128 mag = prod < 0 ? -prod : prod;
      if (mag > (i128(1) << 85)) fits = false;  // next factor could overflow 128 bits
    }
  }
  if (fits) return is_perfect_square(prod);

  int sign_parity = 0, two_parity = 0;
  std::vector<u64> odd;
  for (int i = 0; i < f.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    const auto& m = f.members[static_cast<size_t>(i)];
    sign_parity ^= m.sign < 0;
    two_parity ^= m.has_factor_two;
    odd.insert(odd.end(), m.odd_primes.begin(), m.odd_primes.end());
  }
  if (sign_parity || two_parity) return false;
  std::sort(odd.begin(), odd.end());
  for (std::size_t i = 0; i < odd.size();) {
    std::size_t j = i;
    while (j < odd.size() && odd[j] == odd[i]) ++j;
    if ((j - i) % 2 != 0) return false;
    i = j;
  }
  return true;
}

struct OddSquareSubsets {
  // 1-based ascending index lists, ordered by cardinality then
  // lexicographically; reproducible across runs.
  std::vector<std::vector<int>> subsets;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultSubsetCap = std::size_t(1) << 20;

namespace detail {

// Lexicographic order on ascending index sequences of equal length.
inline bool subset_mask_less(std::uint32_t a, std::uint32_t b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  while (a && b) {
    const int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

struct AffineGf2Solutions {
  bool consistent = false;
  std::uint32_t particular = 0;
  std::vector<std::uint32_t> nullspace;
};

// Solves the affine system over GF(2): for each coordinate, the chosen rows
// must cancel, and the choice count must be odd.
inline AffineGf2Solutions solve_odd_square_system(const Family& f) {
  const int n = f.size();
  const ExponentBasis basis = family_basis(f);
  const std::size_t ncoords = basis.primes.size() + 1;

  struct Row {
    std::uint32_t mask = 0;
    std::uint8_t rhs = 0;
  };
  // One constraint per coordinate (rhs 0) plus the odd-cardinality
  // functional (all ones, rhs 1). Unknown j = "member j+1 chosen".
  std::vector<Row> rows(ncoords + 1);
  for (int j = 0; j < n; ++j) {
    const auto vec = exponent_vector(f.members[static_cast<size_t>(j)], basis);
    for (std::size_t c = 0; c < ncoords; ++c)
      if (vec[c]) rows[c].mask |= std::uint32_t(1) << j;
  }
  rows[ncoords].mask = n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1;
  rows[ncoords].rhs = 1;

  std::array<int, 32> pivot_row_of_col;
  pivot_row_of_col.fill(-1);
  std::size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t pr = rank;
    while (pr < rows.size() && !(rows[pr].mask >> col & 1)) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[pr], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r].mask >> col & 1)) {
        rows[r].mask ^= rows[rank].mask;
        rows[r].rhs ^= rows[rank].rhs;
      }
    }
    pivot_row_of_col[static_cast<size_t>(col)] = static_cast<int>(rank);
    ++rank;
  }

  AffineGf2Solutions out;
  for (const auto& r : rows)
    if (r.mask == 0 && r.rhs) return out;  // inconsistent: no odd square subset
  out.consistent = true;

  for (int col = 0; col < n; ++col) {
    const int pr = pivot_row_of_col[static_cast<size_t>(col)];
    if (pr >= 0 && rows[static_cast<size_t>(pr)].rhs) out.particular |= std::uint32_t(1) << col;
  }
  for (int free_col = 0; free_col < n; ++free_col) {
    if (pivot_row_of_col[static_cast<size_t>(free_col)] >= 0) continue;
    std::uint32_t vec = std::uint32_t(1) << free_col;
    for (int col = 0; col < n; ++col) {
      const int pr = pivot_row_of_col[static_cast<size_t>(col)];
      if (pr >= 0 && (rows[static_cast<size_t>(pr)].mask >> free_col & 1))
        vec |= std::uint32_t(1) << col;
    }
    out.nullspace.push_back(vec);
  }
  return out;
}

inline std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> idx;
  while (mask) {
    idx.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return idx;
}

}  // namespace detail

// All odd-cardinality subsets T with square member product, in deterministic
// order (cardinality, then lexicographic), up to `limit`. The solution coset
// is enumerated up to `enumeration_cap` elements; past that the result is
// flagged truncated. Every emitted subset is re-verified square.
inline OddSquareSubsets odd_square_subsets(const Family& f, std::size_t limit,
                                           std::size_t enumeration_cap = kDefaultSubsetCap) {
  if (limit < 1) fail(errc::invalid_argument, "limit must be >= 1");
  OddSquareSubsets out;
  const auto sol = detail::solve_odd_square_system(f);
  if (!sol.consistent) return out;

  const std::size_t dim = sol.nullspace.size();
  const std::size_t total = dim >= 63 ? SIZE_MAX : std::size_t(1) << dim;
  const std::size_t count = std::min(total, enumeration_cap);
  out.truncated = count < total;

  std::vector<std::uint32_t> masks;
  masks.reserve(count);
  for (std::size_t combo = 0; combo < count; ++combo) {
    std::uint32_t m = sol.particular;
    for (std::size_t j = 0; j < dim; ++j)
      if (combo >> j & 1) m ^= sol.nullspace[j];
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), detail::subset_mask_less);

  for (std::uint32_t m : masks) {
    if (out.subsets.size() >= limit) break;
    if (std::popcount(m) % 2 != 1 || !subset_product_is_square(f, m))
      throw std::logic_error("GF(2) solution failed the square re-check");
    out.subsets.push_back(detail::mask_to_indices(m));
  }
  return out;
}

// Smallest odd prime p <= search_bound with p coprime to every member and
// every member a non-residue mod p. When no odd square subset exists such a
// prime always exists, though possibly above the bound; a miss below the
// bound is inconclusive for this sub-check, never a verdict.
inline std::optional<u64> find_nonresidue_prime(const Family& f, u64 search_bound,
                                                EvalCache* cache = nullptr) {
  for (u64 p = 3; p <= search_bound; p += 2) {
    if (!is_prime_cached(p, cache)) continue;
    bool all_nonresidue = true;
    for (const auto& m : f.members) {
      if (jacobi_cached(m.value, p, cache) != -1) {
        all_nonresidue = false;
        break;
      }
    }
    if (all_nonresidue) return p;
  }
  return std::nullopt;
}

}  // namespace intersective
