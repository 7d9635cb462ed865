#pragma once

#include <string>
#include <vector>

#include "intersective/certify.hpp"
#include "intersective/crt.hpp"

namespace intersective {

// Square root of a mod an odd prime p, requiring (a/p) = +1. Tonelli-Shanks
// with the p = 3 (mod 4) exponentiation shortcut; the needed non-residue is
// the smallest one, so results are reproducible. Returns min(r, p - r).
inline u64 sqrt_mod_p(i64 a, u64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(errc::not_prime, "modulus must be an odd prime");
  const u64 ar = mod_reduce(a, p);
  if (jacobi(a, p) != +1)
    fail(errc::non_residue, std::to_string(a) + " is not a nonzero square mod " + std::to_string(p));

  u64 r;
  if (p % 4 == 3) {
    r = pow_mod(ar, (p + 1) / 4, p);
  } else {
    u64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (jacobi(static_cast<i64>(z), p) != -1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(ar, q, p);
    r = pow_mod(ar, (q + 1) / 2, p);
    while (t != 1) {
      u64 t2 = t;
      u64 i = 0;
      while (t2 != 1) {
        t2 = mul_mod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
  }
  if (mul_mod(r, r, p) != ar) throw std::logic_error("sqrt_mod_p produced a non-root");
  return std::min(r, p - r);
}

// Lifts root^2 = a (mod p) to r^2 = a (mod p^b) with r = root (mod p), by
// iterative single-step lifting. Requires p odd prime, p coprime to a.
inline u64 hensel_lift(i64 a, u64 p, u64 root, int b) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) fail(errc::not_prime, "modulus must be an odd prime");
  if (b < 1) fail(errc::invalid_argument, "exponent must be >= 1");
  const auto pb = checked_pow(p, b, kMaxModulus);
  if (!pb) fail(errc::overflow, "p^b exceeds 2^63");
  if (mod_reduce(a, p) == 0) fail(errc::precondition_violated, "p divides a");
  if (mul_mod(root % p, root % p, p) != mod_reduce(a, p))
    fail(errc::precondition_violated, "root^2 != a (mod p)");

  const u64 target = mod_reduce(a, *pb);
  u64 r = root % p;
  u64 pk = p;
  const u64 inv2r = detail::inv_mod(mul_mod(2, r, p), p);  // 2r is a unit mod p
  for (int k = 1; k < b; ++k) {
    const u64 pk1 = pk * p;  // <= p^b
    // r^2 = a (mod p^k); correct the next digit: r += t*p^k with
    // t = ((a - r^2)/p^k) * (2r)^{-1} (mod p).
    const u64 diff = sub_mod(target % pk1, mul_mod(r, r, pk1), pk1);
    const u64 t = mul_mod((diff / pk) % p, inv2r, p);
    r += t * pk;
    pk = pk1;
  }
  return r;
}

// Square root of a mod 2^b for a = 1 (mod 8). For b <= 3 the root is 1; past
// that each step flips bit k-1 of the root when the residue disagrees at bit
// k, using (r + 2^{k-1})^2 = r^2 + 2^k r (mod 2^{k+1}) for odd r, k >= 3.
inline u64 lift_dyadic(i64 a, int b) {
  if (b < 1 || b > 63) fail(errc::invalid_argument, "exponent must be in [1, 63]");
  if (mod_reduce(a, 8) != 1)
    fail(errc::not_one_mod_8, std::to_string(a) + " is not 1 mod 8");
  if (b <= 3) return 1;
  const u64 target = mod_reduce(a, u64(1) << b);
  u64 r = 1;
  for (int k = 3; k < b; ++k) {
    const u128 diff = u128(r) * r - target;  // wraps mod 2^128; low bits are exact
    if ((diff >> k) & 1) r += u64(1) << (k - 1);
  }
  return r;
}

// Local root of the family polynomial modulo one prime power, together with
// the 1-based member index whose factor vanishes there.
struct LocalRoot {
  u64 root;
  int factor_index;
  friend bool operator==(const LocalRoot&, const LocalRoot&) = default;
};

// Picks a member whose factor is solvable mod pp and computes its root:
// via the certificate's dyadic witness for p = 2, via the per-prime witness
// map when p divides the subset product, and otherwise via the guaranteed
// residue among the subset members. Local roots are canonicalized to
// min(r, p^e - r).
inline LocalRoot root_mod_prime_power(const Family& f, const Certificate& cert,
                                      const PrimePower& pp) {
  if (const auto v = validate_certificate(f, cert); !v.ok)
    fail(errc::invalid_certificate, v.reason);

  if (pp.prime == 2) {
    const int i = cert.dyadic_witness;
    const u64 r = lift_dyadic(f.value(i), pp.exponent);
    return {std::min(r, pp.modulus - r), i};
  }

  int index = 0;
  const auto primes = subset_odd_primes(f, cert.subset);
  if (std::binary_search(primes.begin(), primes.end(), pp.prime)) {
    for (const auto& [p, witness] : cert.odd_prime_witnesses)
      if (p == pp.prime) index = witness;
  } else {
    // p coprime to the subset product: some subset member is a residue.
    for (int j : cert.subset) {
      if (jacobi(f.value(j), pp.prime) == +1) {
        index = j;
        break;
      }
    }
  }
  if (index == 0)
    fail(errc::invalid_certificate,
         "no member with a liftable root mod " + std::to_string(pp.prime));

  const u64 base = sqrt_mod_p(f.value(index), pp.prime);
  const u64 r = hensel_lift(f.value(index), pp.prime, base, pp.exponent);
  return {std::min(r, pp.modulus - r), index};
}

struct RootComponent {
  u64 prime;
  int exponent;
  u64 modulus;
  int factor_index;
  u64 local_root;
  friend bool operator==(const RootComponent&, const RootComponent&) = default;
};

// A residue with f(root) = 0 (mod modulus), plus the per-prime-power pieces
// it was assembled from.
struct RootWitness {
  u64 root;
  u64 modulus;
  std::vector<RootComponent> components;
};

// f(x) mod m evaluated with modular products.
inline u64 eval_family_mod(const Family& f, u64 x, u64 m) {
  if (m == 1) return 0;
  u64 acc = 1 % m;
  const u64 sq = mul_mod(x % m, x % m, m);
  for (const auto& member : f.members) {
    acc = mul_mod(acc, sub_mod(sq, mod_reduce(member.value, m), m), m);
    if (acc == 0) break;
  }
  return acc;
}

// Root of the family polynomial modulo any m in [1, 2^63]: factor m, solve
// each prime power through the certificate, assemble by CRT, and verify
// exactly. There is deliberately no scan fallback: a failure here means the
// certificate route is broken and must surface.
inline RootWitness root_mod(const Family& f, const Certificate& cert, u64 m) {
  if (m == 0 || u128(m) > kMaxModulus) fail(errc::out_of_range, "modulus must be in [1, 2^63]");
  if (const auto v = validate_certificate(f, cert); !v.ok)
    fail(errc::invalid_certificate, v.reason);

  RootWitness w;
  w.modulus = m;
  if (m == 1) {
    w.root = 0;
    return w;
  }

  std::vector<Congruence> parts;
  for (const auto& [p, e] : factorize(m)) {
    const PrimePower pp = make_prime_power(p, e);
    const LocalRoot local = root_mod_prime_power(f, cert, pp);
    w.components.push_back({p, e, pp.modulus, local.factor_index, local.root});
    parts.push_back({local.root, pp.modulus});
  }
  w.root = crt_combine(parts).residue;

  if (eval_family_mod(f, w.root, m) != 0)
    throw std::logic_error("assembled root does not satisfy f(root) = 0 (mod m)");
  return w;
}

}  // namespace intersective
