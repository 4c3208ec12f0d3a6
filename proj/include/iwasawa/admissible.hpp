#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "iwasawa/error.hpp"
#include "iwasawa/modular.hpp"

namespace iwa {

/// Kronecker symbol (D | l) for a prime l.
inline int kronecker(i64 D, u64 l) {
  if (!is_prime(l)) throw std::invalid_argument("kronecker: l must be prime");
  if (l == 2) {
    if (D % 2 == 0) return 0;
    i64 r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  i64 r = ((D % static_cast<i64>(l)) + static_cast<i64>(l)) % static_cast<i64>(l);
  if (r == 0) return 0;
  Modulus mod(l, 1);
  return mod.pow(static_cast<u64>(r), (l - 1) / 2) == 1 ? 1 : -1;
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
  std::array<i64, 5> a{};  // a1, a2, a3, a4, a6
};

inline WeierstrassCurve curve_11a1() { return {{0, -1, 1, -10, -20}}; }

/// a_l = l + 1 - #E(F_l) by counting affine points; also right at bad primes.
inline i64 naive_ap(const WeierstrassCurve& E, u64 l) {
  auto red = [&](i64 v) { i64 r = v % static_cast<i64>(l); return static_cast<u64>(r < 0 ? r + static_cast<i64>(l) : r); };
  const u64 a1 = red(E.a[0]), a2 = red(E.a[1]), a3 = red(E.a[2]), a4 = red(E.a[3]), a6 = red(E.a[4]);
  // count y for each x via the number of roots of y^2 + (a1 x + a3) y - rhs(x)
  std::vector<u64> sq_count(l, 0);
  for (u64 y = 0; y < l; ++y) ++sq_count[y * y % l];
  u64 affine = 0;
  for (u64 x = 0; x < l; ++x) {
    u64 rhs = ((x * x % l * x) + a2 * x % l * x + a4 * x + a6) % l;
    u64 b = (a1 * x + a3) % l;
    if (l == 2) {
      for (u64 y = 0; y < 2; ++y)
        if ((y * y + b * y) % 2 == rhs) ++affine;
      continue;
    }
    // (2y + b)^2 = b^2 + 4 rhs
    affine += sq_count[(b * b + 4 * rhs) % l];
  }
  return static_cast<i64>(l) - static_cast<i64>(affine);
}

/// Hecke eigenvalues a_l of a weight-2 newform of level N0.
struct EigenTable {
  u64 N0 = 1;
  std::map<u64, i64> entries;
  std::string note;

  /// Rejects composite keys and good-prime values beyond the Weil bound.
  void validate() const {
    if (N0 == 0) throw SchemaError("N0", "must be positive");
    for (const auto& [l, a] : entries) {
      if (!is_prime(l)) throw SchemaError("entries." + std::to_string(l), "key is not prime");
      if (N0 % l != 0 && static_cast<u64>(a * a) > 4 * l)
        throw SchemaError("entries." + std::to_string(l),
                          "a_l = " + std::to_string(a) + " violates the Weil bound |a_l| <= 2 sqrt(l)");
    }
  }
};

inline EigenTable eigen_table_from_curve(const WeierstrassCurve& E, u64 N0, u64 bound, std::string note = {}) {
  EigenTable t{N0, {}, std::move(note)};
  for (u64 l = 2; l <= bound; ++l)
    if (is_prime(l)) t.entries[l] = naive_ap(E, l);
  return t;
}

struct AdmissibleReport {
  u64 ell = 0;
  i64 a_ell = 0;
  int n = 0;
  std::array<bool, 4> checks{};  // conditions i-iv
  std::vector<int> epsilons;     // signs with p^n | l + 1 + eps * a_l
  bool admissible() const { return checks[0] && checks[1] && checks[2] && checks[3]; }
};

/// i) l does not divide p N0, ii) l inert in K, iii) p does not divide l^2 - 1,
/// iv) p^n divides l + 1 - a_l or l + 1 + a_l.
inline AdmissibleReport is_admissible(u64 ell, i64 a_ell, u64 p, int n, u64 N0, i64 DK) {
  if (!is_prime(ell)) throw std::invalid_argument("is_admissible: l = " + std::to_string(ell) + " is not prime");
  if (!is_prime(p) || p < 3) throw std::invalid_argument("is_admissible: p must be an odd prime");
  if (n < 1) throw std::invalid_argument("is_admissible: n must be >= 1");
  if (N0 == 0) throw std::invalid_argument("is_admissible: N0 must be positive");
  if (std::gcd(static_cast<u64>(std::llabs(DK)), p * N0) != 1)
    throw std::invalid_argument("is_admissible: D_K must be prime to p N0");
  AdmissibleReport r{ell, a_ell, n, {}, {}};
  r.checks[0] = (p * N0) % ell != 0;
  r.checks[1] = kronecker(DK, ell) == -1;
  r.checks[2] = ((ell % p) * (ell % p)) % p != 1;
  const Modulus mod(p, n);
  for (int eps : {+1, -1}) {
    i64 v = static_cast<i64>(ell) + 1 + eps * a_ell;
    if (mod.reduce(v) == 0) r.epsilons.push_back(eps);
  }
  r.checks[3] = !r.epsilons.empty();
  return r;
}

/// Admissible primes l <= bound in ascending order. Throws SchemaError when
/// the table misses a prime in range.
inline std::vector<AdmissibleReport> scan(const EigenTable& table, u64 p, int n, i64 DK, u64 bound) {
  table.validate();
  std::vector<u64> missing;
  for (u64 l = 2; l <= bound; ++l)
    if (is_prime(l) && !table.entries.count(l)) missing.push_back(l);
  if (!missing.empty()) {
    std::string list;
    for (u64 l : missing) list += (list.empty() ? "" : ", ") + std::to_string(l);
    throw SchemaError("entries", "table has no a_l for primes " + list);
  }
  std::vector<AdmissibleReport> out;
  for (const auto& [l, a] : table.entries) {
    if (l > bound) break;
    auto r = is_admissible(l, a, p, n, table.N0, DK);
    if (r.admissible()) out.push_back(std::move(r));
  }
  return out;
}

/// Frobenius at l acting on T/p^n: eigenvalues (-eps, -eps*l), the roots of
/// x^2 - a_l x + l when a_l = -eps (l + 1); Frobenius at the prime of K above
/// l acts through its square with eigenvalues 1 and l^2.
struct FrobeniusEigs {
  u64 unit_root = 0;   // -eps mod p^n
  u64 ell_root = 0;    // -eps * l mod p^n
  u64 ell_squared = 0; // l^2 mod p^n
};

inline FrobeniusEigs frobenius_eigs(u64 ell, int eps, u64 p, int n) {
  if (eps != 1 && eps != -1) throw std::invalid_argument("frobenius_eigs: eps must be +1 or -1");
  const Modulus mod(p, n);
  const u64 l = mod.reduce_u(ell);
  FrobeniusEigs e{mod.reduce(-eps), mod.reduce_u(mod.mul(mod.reduce(-eps), l)), mod.mul(l, l)};
  if (e.unit_root % p == e.ell_root % p)
    throw ContractViolation("frobenius_eigs: eigenvalues coincide mod p (l = +-1 mod p)");
  return e;
}

}  // namespace iwa
