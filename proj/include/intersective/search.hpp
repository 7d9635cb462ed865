#pragma once

#include <functional>
#include <vector>

#include "intersective/certify.hpp"

namespace intersective {

inline constexpr i64 kMaxPoolBound = 10'000;
inline constexpr int kMaxSearchFamilySize = 8;

enum class RequireVerdict { certificate, counterexample, all };

struct SearchQuery {
  i64 pool_bound = 50;
  bool allow_negative = false;
  int n = 3;
  std::size_t max_results = 100;
  RequireVerdict require = RequireVerdict::all;
  // When nonempty, these values form the pool (in the given order) instead
  // of the enumerated range.
  std::vector<i64> pool_values;
};

// All square-free values v != 0, 1 with |v| <= bound, ascending by absolute
// value with the positive value before its negative.
inline std::vector<SquareFreeInt> enumerate_squarefree(i64 bound, bool allow_negative) {
  if (bound < 0 || bound > kMaxPoolBound)
    fail(errc::out_of_range, "pool bound must be in [0, 10^4]");
  std::vector<SquareFreeInt> pool;
  for (i64 mag = 1; mag <= bound; ++mag) {
    for (i64 v : {mag, -mag}) {
      if (v == 1 || (v < 0 && !allow_negative)) continue;
      try {
        pool.push_back(make_squarefree(v));
      } catch (const error& e) {
        if (e.code() != errc::not_square_free) throw;
      }
    }
  }
  return pool;
}

struct SearchResult {
  Family family;
  Verdict verdict;
};

// Streams distinct n-subsets of the pool in lexicographic order through the
// decision engine, emitting matches until max_results. Symbol evaluations
// are cached across families of the pool: the same (value, prime) pairs
// recur constantly and dominate the per-family cost.
inline void search_families(const SearchQuery& query,
                            const std::function<void(const SearchResult&)>& emit,
                            const DecideOptions& base_opt = {}) {
  if (query.n < kMinFamilySize || query.n > kMaxSearchFamilySize)
    fail(errc::out_of_range, "search family size must be in [3, 8]");
  std::vector<SquareFreeInt> pool;
  if (query.pool_values.empty()) {
    pool = enumerate_squarefree(query.pool_bound, query.allow_negative);
  } else {
    for (i64 v : query.pool_values) pool.push_back(make_squarefree(v));
  }
  const int n = query.n;
  if (static_cast<int>(pool.size()) < n || query.max_results == 0) return;

  EvalCache cache;
  DecideOptions opt = base_opt;
  if (!opt.cache) opt.cache = &cache;

  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  std::size_t emitted = 0;
  while (true) {
    std::vector<SquareFreeInt> members;
    members.reserve(static_cast<size_t>(n));
    for (int i : idx) members.push_back(pool[static_cast<size_t>(i)]);
    SearchResult result{family_from_members(std::move(members)), Verdict{}};
    result.verdict = decide_intersective(result.family, opt);

    const bool matches = query.require == RequireVerdict::all ||
                         (query.require == RequireVerdict::certificate && is_certificate(result.verdict)) ||
                         (query.require == RequireVerdict::counterexample && is_counterexample(result.verdict));
    if (matches) {
      emit(result);
      if (++emitted >= query.max_results) return;
    }

    // next lexicographic combination
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == static_cast<int>(pool.size()) - n + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < n; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
}

// All ordered pairs p < q of odd primes <= prime_bound with their reports;
// discrepancies are flagged inline by the report itself.
inline void prime_pair_reports(u64 prime_bound,
                               const std::function<void(const PrimePairReport&)>& emit,
                               const DecideOptions& base_opt = {}) {
  if (prime_bound > static_cast<u64>(kMaxPoolBound))
    fail(errc::out_of_range, "prime bound must be <= 10^4");
  const auto primes = primes_up_to(prime_bound);
  EvalCache cache;
  DecideOptions opt = base_opt;
  if (!opt.cache) opt.cache = &cache;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] == 2) continue;
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      emit(check_prime_pair(primes[i], primes[j], opt));
  }
}

}  // namespace intersective
