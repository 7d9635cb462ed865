#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intersective/certify.hpp"
#include "intersective/lifting.hpp"

namespace intersective {

inline constexpr u64 kDefaultScanBudget = 10'000'000;

struct ScanReport {
  u64 modulus = 0;
  bool solvable = false;
  u64 witness = 0;          // valid when solvable
  u64 residues_checked = 0; // = modulus when unsolvable
};

// Decides f(x) = 0 (mod m) by exhausting x = 0..m-1 with modular products;
// returns the first witness. Independent of the certificate machinery.
inline ScanReport has_root_mod(const Family& f, u64 m, u64 scan_budget = kDefaultScanBudget) {
  if (m == 0) fail(errc::invalid_argument, "modulus must be >= 1");
  if (m > scan_budget)
    fail(errc::budget_exceeded,
         "modulus " + std::to_string(m) + " exceeds the scan budget " + std::to_string(scan_budget));
  ScanReport rep;
  rep.modulus = m;
  std::vector<u64> residues;
  residues.reserve(f.members.size());
  for (const auto& member : f.members) residues.push_back(mod_reduce(member.value, m));
  for (u64 x = 0; x < m; ++x) {
    const u64 sq = mul_mod(x, x, m);
    u64 acc = 1 % m;
    for (u64 a : residues) {
      acc = mul_mod(acc, sub_mod(sq, a, m), m);
      if (acc == 0) break;
    }
    if (acc == 0) {
      rep.solvable = true;
      rep.witness = x;
      rep.residues_checked = x + 1;
      return rep;
    }
  }
  rep.residues_checked = m;
  return rep;
}

struct FactorSolvability {
  bool solvable = false;
  std::string reason;
};

// Analytic decision for x^2 = a (mod p^k), a square-free:
//   odd p, p coprime to a: solvable for every k iff (a/p) = +1;
//   odd p, p | a: solvable only for k = 1 (p || a since a is square-free);
//   p = 2, a odd: k = 1 always, k = 2 iff a = 1 (mod 4), k >= 3 iff a = 1 (mod 8);
//   p = 2, a even: a = 2 (mod 4), so k = 1 only.
inline FactorSolvability factor_solvable_mod_pk(const SquareFreeInt& a, u64 p, int k) {
  make_prime_power(p, k);  // validates p prime, k >= 1, p^k <= 2^63
  if (p != 2) {
    if (a.divisible_by(p)) {
      if (k == 1) return {true, "p divides a: x = 0 is a root mod p"};
      return {false, "p || a with a square-free: no root mod p^2"};
    }
    const int sym = jacobi(a.value, p);
    if (sym == +1) return {true, "(a/p) = +1: a root mod p lifts to every power of p"};
    return {false, "(a/p) = -1: no root mod p"};
  }
  if (a.has_factor_two) {
    if (k == 1) return {true, "a even: x = 0 is a root mod 2"};
    return {false, "a = 2 (mod 4) with a square-free: no root mod 4"};
  }
  if (k == 1) return {true, "a odd: x = 1 is a root mod 2"};
  const u64 r8 = a.residue_mod8();
  if (k == 2) {
    if (r8 % 4 == 1) return {true, "a = 1 (mod 4): root mod 4"};
    return {false, "a = 3 (mod 4): no root mod 4"};
  }
  if (r8 == 1) return {true, "a = 1 (mod 8): a root mod 8 lifts to every power of 2"};
  return {false, "a = " + std::to_string(r8) + " (mod 8): no root mod 8"};
}

// The modulus p^(k*n) at which the full product provably has no root once
// every factor is unsolvable mod p^k: a root mod p^(kn) would force some
// factor to vanish mod p^k.
inline PrimePower obstruction_modulus(u64 p, int k, int n) {
  if (k < 1 || n < 1) fail(errc::invalid_argument, "exponents must be >= 1");
  return make_prime_power(p, k * n);
}

// Independent re-check of a counterexample: recompute each obstruction's
// hypothesis and per-factor evidence, confirm every factor unsolvable at
// (p, k), confirm the modulus, and corroborate by exhaustive scan whenever
// the modulus is within the scan budget. The analytic check is primary; the
// scan is corroboration, since p^(kn) can exceed any reasonable scan budget.
inline Validation verify_counterexample(const Family& f, const Counterexample& cx,
                                        u64 scan_budget = kDefaultScanBudget) {
  const int n = f.size();
  if (cx.obstructions.empty()) return {false, "no obstructions listed"};
  if (cx.primary < 1 || cx.primary > static_cast<int>(cx.obstructions.size()))
    return {false, "primary index out of range"};
  for (const auto& ob : cx.obstructions) {
    const std::string tag = std::string(obstruction_kind_name(ob.kind)) + "(" +
                            std::to_string(ob.prime) + "): ";
    switch (ob.kind) {
      case ObstructionKind::no_qr_prime: {
        if (ob.k != 1) return {false, tag + "expected k = 1"};
        if (ob.prime < 3 || !is_prime(ob.prime)) return {false, tag + "prime is not an odd prime"};
        for (const auto& m : f.members)
          if (m.divisible_by(ob.prime)) return {false, tag + "prime divides a member"};
        for (int i = 1; i <= n; ++i)
          if (jacobi(f.value(i), ob.prime) != -1)
            return {false, tag + "member " + std::to_string(i) + " is not a non-residue"};
        break;
      }
      case ObstructionKind::odd_prime: {
        if (ob.k != 2) return {false, tag + "expected k = 2"};
        if (ob.prime < 3 || !is_prime(ob.prime)) return {false, tag + "prime is not an odd prime"};
        bool divides_some = false;
        for (const auto& m : f.members) divides_some |= m.divisible_by(ob.prime);
        if (!divides_some) return {false, tag + "prime divides no member"};
        for (int i = 1; i <= n; ++i)
          if (jacobi(f.value(i), ob.prime) == +1)
            return {false, tag + "member " + std::to_string(i) + " is a residue"};
        break;
      }
      case ObstructionKind::dyadic: {
        if (ob.prime != 2 || ob.k != 3) return {false, tag + "expected p = 2, k = 3"};
        for (int i = 1; i <= n; ++i)
          if (f.member(i).residue_mod8() == 1)
            return {false, tag + "member " + std::to_string(i) + " is 1 mod 8"};
        break;
      }
    }

    if (ob.evidence.size() != static_cast<std::size_t>(n)) return {false, tag + "evidence incomplete"};
    for (int i = 1; i <= n; ++i) {
      const auto& ev = ob.evidence[static_cast<size_t>(i - 1)];
      if (ev.index != i) return {false, tag + "evidence indices out of order"};
      if (ob.kind == ObstructionKind::dyadic) {
        if (ev.mod8 != static_cast<int>(f.member(i).residue_mod8()))
          return {false, tag + "evidence mod-8 residue mismatch"};
      } else if (ev.legendre != jacobi(f.value(i), ob.prime)) {
        return {false, tag + "evidence Legendre value mismatch"};
      }
    }

    for (int i = 1; i <= n; ++i)
      if (factor_solvable_mod_pk(f.member(i), ob.prime, ob.k).solvable)
        return {false, tag + "factor " + std::to_string(i) + " is solvable mod p^k"};

    const PrimePower expect = obstruction_modulus(ob.prime, ob.k, n);
    if (ob.modulus != expect.modulus)
      return {false, tag + "modulus is not p^(k*n)"};

    if (ob.modulus <= scan_budget && has_root_mod(f, ob.modulus, scan_budget).solvable)
      return {false, tag + "scan found a root mod " + std::to_string(ob.modulus)};
  }
  for (const auto& ob : cx.obstructions)
    if (ob.modulus < cx.obstructions[static_cast<size_t>(cx.primary - 1)].modulus)
      return {false, "primary does not have the smallest modulus"};
  return {true, ""};
}

// Smallest m <= bound with no root, by increasing exhaustive scan. Scans
// every m rather than only prime powers: the minimum is a prime power by
// CRT, and the full scan independently validates that.
inline std::optional<u64> minimal_failing_modulus(const Family& f, u64 bound,
                                                  u64 scan_budget = kDefaultScanBudget) {
  if (bound > scan_budget) fail(errc::budget_exceeded, "bound exceeds the scan budget");
  for (u64 m = 1; m <= bound; ++m)
    if (!has_root_mod(f, m, scan_budget).solvable) return m;
  return std::nullopt;
}

}  // namespace intersective
