#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "intersective/square_subsets.hpp"

namespace intersective {

// Witness data from which a root modulo every prime power is constructively
// derivable: an odd-cardinality subset with square product, one quadratic
// residue witness per odd prime dividing that product, and a member = 1 mod 8.
struct Certificate {
  std::vector<int> subset;                              // 1-based, ascending, odd size
  std::vector<std::pair<u64, int>> odd_prime_witnesses; // sorted by prime; witness 1-based
  int dyadic_witness = 0;                               // 1-based

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class ObstructionKind {
  no_qr_prime,  // p coprime to every member, all members non-residues mod p
  odd_prime,    // p divides a member, no member is a residue mod p
  dyadic,       // no member = 1 (mod 8)
};

inline const char* obstruction_kind_name(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::no_qr_prime: return "no_qr_prime";
    case ObstructionKind::odd_prime: return "odd_prime";
    case ObstructionKind::dyadic: return "dyadic";
  }
  return "unknown";
}

// Why x^2 = a_i (mod p^k) is unsolvable: the Legendre value for odd p,
// the residue class mod 8 for p = 2.
struct FactorEvidence {
  int index = 0;  // 1-based member index
  int legendre = 0;
  int mod8 = -1;

  friend bool operator==(const FactorEvidence&, const FactorEvidence&) = default;
};

struct Obstruction {
  ObstructionKind kind;
  u64 prime;
  int k;        // per-factor unsolvability exponent: 1, 2, or 3
  u64 modulus;  // prime^(k*n), explicitly rootless
  std::vector<FactorEvidence> evidence;

  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

struct Counterexample {
  std::vector<Obstruction> obstructions;  // nonempty
  int primary = 1;                        // 1-based index of the smallest modulus

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

// Returned only when a definite verdict cannot be produced: the decision is
// known to be negative but no in-range obstruction modulus could be built.
struct Inconclusive {
  std::string reason;
  u64 searched_bound = 0;

  friend bool operator==(const Inconclusive&, const Inconclusive&) = default;
};

using Verdict = std::variant<Certificate, Counterexample, Inconclusive>;

inline bool is_certificate(const Verdict& v) { return std::holds_alternative<Certificate>(v); }
inline bool is_counterexample(const Verdict& v) { return std::holds_alternative<Counterexample>(v); }
inline bool is_inconclusive(const Verdict& v) { return std::holds_alternative<Inconclusive>(v); }

// For each odd prime dividing the member product, the smallest 1-based index
// i with (a_i/p) = +1; primes with no such witness are recorded as bad.
struct GoodOddPrimes {
  std::vector<std::pair<u64, int>> witnesses;  // sorted by prime
  std::vector<u64> bad;                        // sorted

  std::optional<int> witness_for(u64 p) const {
    for (const auto& [q, i] : witnesses)
      if (q == p) return i;
    return std::nullopt;
  }
  bool is_bad(u64 p) const { return std::binary_search(bad.begin(), bad.end(), p); }
};

inline GoodOddPrimes good_odd_primes(const Family& f, EvalCache* cache = nullptr) {
  GoodOddPrimes out;
  for (u64 p : family_odd_primes(f)) {
    std::optional<int> witness;
    for (int i = 1; i <= f.size(); ++i) {
      if (jacobi_cached(f.value(i), p, cache) == +1) {
        witness = i;
        break;
      }
    }
    if (witness)
      out.witnesses.emplace_back(p, *witness);
    else
      out.bad.push_back(p);
  }
  return out;
}

// Smallest 1-based index with a_i = 1 (mod 8). Members exclude 1 itself, so
// any hit is 8m + 1 with m != 0.
inline std::optional<int> dyadic_witness_index(const Family& f) {
  for (int i = 1; i <= f.size(); ++i)
    if (f.member(i).residue_mod8() == 1) return i;
  return std::nullopt;
}

// Sorted union of odd primes dividing the product over a 1-based index subset.
inline std::vector<u64> subset_odd_primes(const Family& f, const std::vector<int>& subset) {
  std::vector<u64> primes;
  for (int j : subset) {
    const auto& m = f.member(j);
    primes.insert(primes.end(), m.odd_primes.begin(), m.odd_primes.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

struct DecideOptions {
  u64 nonresidue_search_bound = 1'000'000;
  std::size_t subset_cap = kDefaultSubsetCap;
  EvalCache* cache = nullptr;
};

namespace detail {

inline std::optional<Obstruction> try_obstruction(const Family& f, ObstructionKind kind, u64 prime,
                                                   int k, EvalCache* cache) {
  const auto modulus = checked_pow(prime, k * f.size(), kMaxModulus);
  if (!modulus) return std::nullopt;
  Obstruction ob;
  ob.kind = kind;
  ob.prime = prime;
  ob.k = k;
  ob.modulus = *modulus;
  for (int i = 1; i <= f.size(); ++i) {
    FactorEvidence ev;
    ev.index = i;
    if (kind == ObstructionKind::dyadic)
      ev.mod8 = static_cast<int>(f.member(i).residue_mod8());
    else
      ev.legendre = jacobi_cached(f.value(i), prime, cache);
    ob.evidence.push_back(ev);
  }
  return ob;
}

}  // namespace detail

// The decision engine. Certificate when some odd square subset T (in the
// deterministic enumeration order) has all its odd primes good and some
// member is 1 mod 8; the first qualifying T and smallest witnesses are
// chosen. Otherwise every detected obstruction is reported and the smallest
// modulus designated primary. Inconclusive only when the verdict is known to
// be negative but no obstruction could be materialized: the non-residue
// prime search exhausted its bound, or every obstruction modulus p^(kn)
// overflows 2^63.
inline Verdict decide_intersective(const Family& f, const DecideOptions& opt = {}) {
  const GoodOddPrimes gop = good_odd_primes(f, opt.cache);
  const OddSquareSubsets subs = odd_square_subsets(f, opt.subset_cap, opt.subset_cap);
  const std::optional<int> dyadic = dyadic_witness_index(f);

  std::optional<std::vector<int>> chosen;
  std::optional<u64> first_bad_prime;
  for (const auto& t : subs.subsets) {
    const auto primes = subset_odd_primes(f, t);
    const auto bad = std::find_if(primes.begin(), primes.end(),
                                  [&](u64 p) { return gop.is_bad(p); });
    if (bad == primes.end()) {
      chosen = t;
      break;
    }
    // A bad prime dividing one square-subset product divides them all, so
    // the first subset already decides the condition; later subsets are
    // scanned only if the first one unexpectedly had no bad prime recorded.
    if (!first_bad_prime) first_bad_prime = *bad;
  }

  if (chosen && dyadic) {
    Certificate cert;
    cert.subset = *chosen;
    for (u64 p : subset_odd_primes(f, *chosen))
      cert.odd_prime_witnesses.emplace_back(p, *gop.witness_for(p));
    cert.dyadic_witness = *dyadic;
    return cert;
  }

  std::vector<Obstruction> obstructions;
  bool modulus_overflowed = false;
  bool search_exhausted = false;

  if (subs.subsets.empty()) {
    if (const auto p = find_nonresidue_prime(f, opt.nonresidue_search_bound, opt.cache)) {
      if (auto ob = detail::try_obstruction(f, ObstructionKind::no_qr_prime, *p, 1, opt.cache))
        obstructions.push_back(std::move(*ob));
      else
        modulus_overflowed = true;
    } else {
      search_exhausted = true;
    }
  } else if (!chosen) {
    if (auto ob = detail::try_obstruction(f, ObstructionKind::odd_prime, *first_bad_prime, 2, opt.cache))
      obstructions.push_back(std::move(*ob));
    else
      modulus_overflowed = true;
  }

  if (!dyadic) {
    if (auto ob = detail::try_obstruction(f, ObstructionKind::dyadic, 2, 3, opt.cache))
      obstructions.push_back(std::move(*ob));
    else
      modulus_overflowed = true;
  }

  if (obstructions.empty()) {
    Inconclusive inc;
    if (search_exhausted) {
      inc.reason = "no odd square subset exists; no witness prime found below the search bound";
      inc.searched_bound = opt.nonresidue_search_bound;
    } else if (modulus_overflowed) {
      inc.reason = "an obstruction exists but its modulus p^(kn) exceeds 2^63";
    } else {
      inc.reason = "no obstruction detected";  // unreachable for valid input
    }
    return inc;
  }

  Counterexample cx;
  cx.obstructions = std::move(obstructions);
  int best = 1;
  for (int i = 2; i <= static_cast<int>(cx.obstructions.size()); ++i) {
    if (cx.obstructions[static_cast<size_t>(i - 1)].modulus <
        cx.obstructions[static_cast<size_t>(best - 1)].modulus)
      best = i;
  }
  cx.primary = best;
  return cx;
}

struct Validation {
  bool ok = false;
  std::string reason;  // first violated clause when not ok
};

// Independent re-check of every certificate invariant; rejects tampering.
inline Validation validate_certificate(const Family& f, const Certificate& cert) {
  const int n = f.size();
  if (cert.subset.empty()) return {false, "subset is empty"};
  for (std::size_t i = 0; i < cert.subset.size(); ++i) {
    const int j = cert.subset[i];
    if (j < 1 || j > n) return {false, "subset index out of range"};
    if (i > 0 && cert.subset[i - 1] >= j) return {false, "subset not strictly ascending"};
  }
  if (cert.subset.size() % 2 != 1) return {false, "subset cardinality is even"};

  std::uint32_t mask = 0;
  for (int j : cert.subset) mask |= std::uint32_t(1) << (j - 1);
  if (!subset_product_is_square(f, mask)) return {false, "subset product is not a perfect square"};

  const auto primes = subset_odd_primes(f, cert.subset);
  if (cert.odd_prime_witnesses.size() != primes.size())
    return {false, "witness primes do not match the odd primes of the subset product"};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& [p, witness] = cert.odd_prime_witnesses[i];
    if (p != primes[i])
      return {false, "witness primes do not match the odd primes of the subset product"};
    if (witness < 1 || witness > n) return {false, "witness index out of range"};
    if (jacobi(f.value(witness), p) != +1)
      return {false, "witness member is not a quadratic residue mod " + std::to_string(p)};
  }

  if (cert.dyadic_witness < 1 || cert.dyadic_witness > n)
    return {false, "dyadic witness index out of range"};
  if (f.member(cert.dyadic_witness).residue_mod8() != 1)
    return {false, "dyadic witness member is not 1 mod 8"};
  return {true, ""};
}

// Report for the (p, q, pq) family of two distinct odd primes, checked both
// through the classical reciprocity condition (p/q) = (q/p) = +1 and through
// the decision engine. The engine verdict is authoritative; a mismatch is
// flagged, not resolved.
struct PrimePairReport {
  u64 p = 0, q = 0;
  bool reciprocity_condition = false;
  Verdict engine_verdict;
  bool discrepancy = false;
};

inline PrimePairReport check_prime_pair(u64 p, u64 q, const DecideOptions& opt = {}) {
  if (p == q) fail(errc::invalid_argument, "primes must be distinct");
  if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(errc::not_prime, "p must be an odd prime");
  if (q < 3 || q % 2 == 0 || !is_prime(q)) fail(errc::not_prime, "q must be an odd prime");
  PrimePairReport r;
  r.p = p;
  r.q = q;
  r.reciprocity_condition = legendre(static_cast<i64>(p), q) == +1 && legendre(static_cast<i64>(q), p) == +1;
  if (u128(p) * q > u128(kMaxMemberMagnitude)) fail(errc::out_of_range, "p*q exceeds 2^40");
  const Family f = validate_family({static_cast<i64>(p), static_cast<i64>(q),
                                    static_cast<i64>(p) * static_cast<i64>(q)});
  r.engine_verdict = decide_intersective(f, opt);
  r.discrepancy = r.reciprocity_condition != is_certificate(r.engine_verdict);
  return r;
}

// Report for the (c, d, c1*d1) family built from two square-free integers,
// where c1 = c/gcd(c,d) and d1 = d/gcd(c,d). Evaluates the two shortcut
// conditions (per-prime witness clause and the dyadic clause) next to the
// engine verdict; disagreement is flagged.
struct SquareFreePairReport {
  i64 c = 0, d = 0, c1d1 = 0;
  bool odd_prime_condition = false;
  bool dyadic_condition = false;
  Verdict engine_verdict;
  bool discrepancy = false;
};

inline SquareFreePairReport check_squarefree_pair(i64 c, i64 d, const DecideOptions& opt = {}) {
  SquareFreeInt sc, sd;
  try {
    sc = make_squarefree(c);
  } catch (const error& e) {
    fail(e.code(), std::string("c: ") + e.what());
  }
  try {
    sd = make_squarefree(d);
  } catch (const error& e) {
    fail(e.code(), std::string("d: ") + e.what());
  }
  if (c == d) fail(errc::not_distinct, "c and d must be distinct");
  const i64 g = std::gcd(c, d);
  const i64 c1 = c / g, d1 = d / g;
  const i128 prod = i128(c1) * d1;
  if (prod == 0 || prod == 1) fail(errc::disallowed_value, "c1*d1 must not be 0 or 1");
  if (prod > kMaxMemberMagnitude || prod < -i128(kMaxMemberMagnitude))
    fail(errc::out_of_range, "c1*d1 exceeds 2^40");
  const i64 c1d1 = c1 * d1;
  if (c1d1 == c || c1d1 == d) fail(errc::not_distinct, "c1*d1 coincides with c or d");

  SquareFreePairReport r;
  r.c = c;
  r.d = d;
  r.c1d1 = c1d1;

  const auto clause = [&](const SquareFreeInt& base, i64 other) {
    for (u64 p : base.odd_primes)
      if (jacobi(other, p) != +1 && jacobi(c1d1, p) != +1) return false;
    return true;
  };
  r.odd_prime_condition = clause(sc, d) && clause(sd, c);
  r.dyadic_condition = mod_reduce(c, 8) == 1 || mod_reduce(d, 8) == 1 || mod_reduce(c1d1, 8) == 1;

  const Family f = validate_family({c, d, c1d1});
  r.engine_verdict = decide_intersective(f, opt);
  r.discrepancy = (r.odd_prime_condition && r.dyadic_condition) != is_certificate(r.engine_verdict);
  return r;
}

}  // namespace intersective
