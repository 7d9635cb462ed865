#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "intersective/errors.hpp"
#include "intersective/squarefree.hpp"

namespace intersective {

inline constexpr int kMinFamilySize = 3;
// Keeps subset enumeration and counterexample moduli at desk scale.
inline constexpr int kMaxFamilySize = 24;

// An ordered tuple (a_1, ..., a_n) of distinct square-free integers, n >= 3.
// The polynomial prod(x^2 - a_i) is implicit. Member indices are 1-based in
// every report this library produces.
struct Family {
  std::vector<SquareFreeInt> members;

  int size() const { return static_cast<int>(members.size()); }
  const SquareFreeInt& member(int index1) const { return members[static_cast<size_t>(index1 - 1)]; }
  i64 value(int index1) const { return member(index1).value; }

  std::vector<i64> values() const {
    std::vector<i64> v;
    v.reserve(members.size());
    for (const auto& m : members) v.push_back(m.value);
    return v;
  }
};

namespace detail {

inline void check_family_shape(const std::vector<SquareFreeInt>& members) {
  if (members.size() < kMinFamilySize) fail(errc::too_few, "family requires n >= 3");
  if (members.size() > kMaxFamilySize)
    fail(errc::too_many, "family size capped at " + std::to_string(kMaxFamilySize));
  std::vector<i64> vals;
  vals.reserve(members.size());
  for (const auto& m : members) vals.push_back(m.value);
  std::sort(vals.begin(), vals.end());
  if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
    fail(errc::not_distinct, "members must be pairwise distinct");
}

}  // namespace detail

inline Family validate_family(std::span<const i64> values) {
  if (values.size() < kMinFamilySize) fail(errc::too_few, "family requires n >= 3");
  Family f;
  f.members.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      f.members.push_back(make_squarefree(values[i]));
    } catch (const error& e) {
      fail(e.code(), "member " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  detail::check_family_shape(f.members);
  return f;
}

inline Family validate_family(std::initializer_list<i64> values) {
  return validate_family(std::span<const i64>(values.begin(), values.size()));
}

// Assembles a family from already-validated records (e.g. a search pool),
// skipping refactorization but not the shape checks.
inline Family family_from_members(std::vector<SquareFreeInt> members) {
  detail::check_family_shape(members);
  return Family{std::move(members)};
}

// Sorted union of the odd primes dividing any member.
inline std::vector<u64> family_odd_primes(const Family& f) {
  std::vector<u64> primes;
  for (const auto& m : f.members) primes.insert(primes.end(), m.odd_primes.begin(), m.odd_primes.end());
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace intersective
