#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/modular.hpp"
#include "iwasawa/padic.hpp"

namespace iwa {

/// Dense polynomial in X over Z/p^N, lowest degree first, no trailing zeros.
class ZpPoly {
 public:
  ZpPoly() = default;
  explicit ZpPoly(const Modulus& mod) : mod_(mod) {}
  ZpPoly(const Modulus& mod, std::vector<u64> coeffs) : mod_(mod), c_(std::move(coeffs)) {
    for (auto& x : c_) x = mod_.reduce_u(x);
    trim();
  }

  static ZpPoly from_ints(const Modulus& mod, std::initializer_list<i64> coeffs) {
    std::vector<u64> c;
    for (i64 x : coeffs) c.push_back(mod.reduce(x));
    return ZpPoly(mod, std::move(c));
  }
  static ZpPoly constant(const Modulus& mod, i64 c) { return from_ints(mod, {c}); }
  static ZpPoly monomial(const Modulus& mod, std::size_t k, u64 c = 1) {
    std::vector<u64> v(k + 1, 0);
    v[k] = c;
    return ZpPoly(mod, std::move(v));
  }
  /// 1 + X
  static ZpPoly gamma(const Modulus& mod) { return from_ints(mod, {1, 1}); }

  const Modulus& modulus() const { return mod_; }
  const std::vector<u64>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == mod_.reduce_u(1); }

  ZpPoly reduce_to(int n) const {
    if (n > mod_.precision()) throw std::invalid_argument("ZpPoly::reduce_to: cannot raise precision");
    return ZpPoly(mod_.with_precision(n), c_);
  }
  /// Residue modulo X^D.
  ZpPoly truncate(std::size_t D) const {
    if (c_.size() <= D) return *this;
    return ZpPoly(mod_, std::vector<u64>(c_.begin(), c_.begin() + D));
  }
  /// Every coefficient divisible by p^k.
  bool divisible_by_p_power(int k) const {
    return std::all_of(c_.begin(), c_.end(), [&](u64 x) { return mod_.val(x) >= k; });
  }
  /// Exact quotient by p^k, known modulo p^(N-k).
  ZpPoly divide_by_p_power(int k) const {
    if (!divisible_by_p_power(k)) throw ContractViolation("ZpPoly: not divisible by p^k");
    u64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= mod_.p();
    std::vector<u64> v(c_);
    for (auto& x : v) x /= pk;
    return ZpPoly(mod_.with_precision(mod_.precision() - k), std::move(v));
  }

  ZpPoly scaled(u64 s) const {
    std::vector<u64> v(c_);
    for (auto& x : v) x = mod_.mul(x, mod_.reduce_u(s));
    return ZpPoly(mod_, std::move(v));
  }
  ZpPoly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<u64> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return ZpPoly(mod_, std::move(v));
  }

  ZpPoly operator-() const {
    std::vector<u64> v(c_);
    for (auto& x : v) x = mod_.neg(x);
    return ZpPoly(mod_, std::move(v));
  }
  friend ZpPoly operator+(const ZpPoly& a, const ZpPoly& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    std::vector<u64> v(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = m.add(m.reduce_u(a.coeff(i)), m.reduce_u(b.coeff(i)));
    return ZpPoly(m, std::move(v));
  }
  friend ZpPoly operator-(const ZpPoly& a, const ZpPoly& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    std::vector<u64> v(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = m.sub(m.reduce_u(a.coeff(i)), m.reduce_u(b.coeff(i)));
    return ZpPoly(m, std::move(v));
  }
  friend ZpPoly operator*(const ZpPoly& a, const ZpPoly& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    if (a.is_zero() || b.is_zero()) return ZpPoly(m);
    std::vector<u64> v(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      u64 ai = m.reduce_u(a.c_[i]);
      if (ai == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        v[i + j] = m.add(v[i + j], m.mul(ai, m.reduce_u(b.c_[j])));
    }
    return ZpPoly(m, std::move(v));
  }
  ZpPoly& operator+=(const ZpPoly& o) { return *this = *this + o; }
  ZpPoly& operator-=(const ZpPoly& o) { return *this = *this - o; }
  ZpPoly& operator*=(const ZpPoly& o) { return *this = *this * o; }

  friend bool operator==(const ZpPoly& a, const ZpPoly& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (m.reduce_u(a.coeff(i)) != m.reduce_u(b.coeff(i))) return false;
    return true;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      u64 c = c_[i];
      if (c == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || c != 1) s += std::to_string(c);
      if (i >= 1) s += (i == 0 || c != 1) ? "*X" : "X";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Modulus mod_;
  std::vector<u64> c_;
};

struct DivResult {
  ZpPoly quotient;
  ZpPoly remainder;
  bool exact = false;
};

/// f = q*g + r with deg r < deg g. Division by a monic polynomial never
/// needs an inverse, so this is exact over Z/p^N.
inline DivResult monic_divide(const ZpPoly& f, const ZpPoly& g) {
  if (!g.is_monic()) throw std::invalid_argument("monic_divide: divisor is not monic");
  Modulus m = common_modulus(f.modulus(), g.modulus());
  const int dg = g.degree();
  if (f.degree() < dg) return {ZpPoly(m), f.reduce_to(m.precision()), f.is_zero()};
  std::vector<u64> r(f.coeffs());
  for (auto& x : r) x = m.reduce_u(x);
  std::vector<u64> q(r.size() - dg, 0);
  const auto& gc = g.coeffs();
  for (int i = static_cast<int>(r.size()) - 1; i >= dg; --i) {
    u64 c = r[i];
    if (c == 0) continue;
    q[i - dg] = c;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] = m.sub(r[i - dg + j], m.mul(c, m.reduce_u(gc[j])));
  }
  r.resize(dg);
  ZpPoly rem(m, std::move(r));
  bool exact = rem.is_zero();
  return {ZpPoly(m, std::move(q)), std::move(rem), exact};
}

inline ZpPoly poly_mod(const ZpPoly& f, const ZpPoly& g) { return monic_divide(f, g).remainder; }

/// Row k -> C(n, k) mod p^N for k = 0..n, tracking p-parts exactly.
inline std::vector<u64> binomial_row(const Modulus& mod, u64 n) {
  std::vector<u64> row(n + 1, 0);
  const u64 p = mod.p();
  u64 unit = mod.reduce_u(1);
  int v = 0;
  row[0] = unit;
  for (u64 k = 1; k <= n; ++k) {
    u64 num = n - k + 1, den = k;
    while (num % p == 0) {
      num /= p;
      ++v;
    }
    while (den % p == 0) {
      den /= p;
      --v;
    }
    unit = mod.mul(mod.mul(unit, mod.reduce_u(num)), mod.inv(mod.reduce_u(den)));
    row[k] = v >= mod.precision() ? 0 : mod.mul(unit, mod.p_power(v));
  }
  return row;
}

inline u64 ipow(u64 b, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

enum class StructKind { Omega, Phi, OmegaPlus, OmegaMinus, TildePlus, TildeMinus };

inline std::string to_string(StructKind k) {
  switch (k) {
    case StructKind::Omega: return "omega";
    case StructKind::Phi: return "phi";
    case StructKind::OmegaPlus: return "omega_plus";
    case StructKind::OmegaMinus: return "omega_minus";
    case StructKind::TildePlus: return "tilde_plus";
    case StructKind::TildeMinus: return "tilde_minus";
  }
  return "?";
}

/// A monic structural polynomial of the tower, tagged with what it is.
struct StructPoly {
  StructKind kind;
  int level;
  ZpPoly poly;
};

/// (1+X)^(p^m) - 1
inline ZpPoly omega_poly(const Modulus& mod, int m) {
  if (m < 0) throw std::invalid_argument("omega: negative level");
  auto row = binomial_row(mod, ipow(mod.p(), m));
  row[0] = 0;
  return ZpPoly(mod, std::move(row));
}

/// omega_m / omega_{m-1}: the p^m-th cyclotomic polynomial evaluated at 1+X.
inline ZpPoly phi_poly(const Modulus& mod, int m) {
  if (m < 1) throw std::invalid_argument("phi: level must be >= 1");
  auto d = monic_divide(omega_poly(mod, m), omega_poly(mod, m - 1));
  return d.quotient;
}

/// Product of Phi_j over 1 <= j <= m with j even (+) or odd (-). Empty product is 1.
inline ZpPoly omega_tilde_poly(const Modulus& mod, int m, int sign) {
  if (m < 0) throw std::invalid_argument("omega_tilde: negative level");
  ZpPoly r = ZpPoly::constant(mod, 1);
  for (int j = 1; j <= m; ++j)
    if ((j % 2 == 0) == (sign > 0)) r *= phi_poly(mod, j);
  return r;
}

/// Phi_1 * ... * Phi_m
inline ZpPoly phi_product(const Modulus& mod, int m) {
  ZpPoly r = ZpPoly::constant(mod, 1);
  for (int j = 1; j <= m; ++j) r *= phi_poly(mod, j);
  return r;
}

inline StructPoly omega(const Modulus& mod, int m) { return {StructKind::Omega, m, omega_poly(mod, m)}; }
inline StructPoly phi(const Modulus& mod, int m) { return {StructKind::Phi, m, phi_poly(mod, m)}; }

/// sign > 0 selects the even levels, sign < 0 the odd ones. With
/// `with_x` the X factor is included (omega^pm), otherwise the tilde form.
inline StructPoly omega_pm(const Modulus& mod, int m, int sign, bool with_x = false) {
  ZpPoly t = omega_tilde_poly(mod, m, sign);
  if (with_x)
    return {sign > 0 ? StructKind::OmegaPlus : StructKind::OmegaMinus, m, t.shifted(1)};
  return {sign > 0 ? StructKind::TildePlus : StructKind::TildeMinus, m, t};
}

inline StructPoly make_struct(const Modulus& mod, StructKind kind, int m) {
  switch (kind) {
    case StructKind::Omega: return omega(mod, m);
    case StructKind::Phi: return phi(mod, m);
    case StructKind::OmegaPlus: return omega_pm(mod, m, +1, true);
    case StructKind::OmegaMinus: return omega_pm(mod, m, -1, true);
    case StructKind::TildePlus: return omega_pm(mod, m, +1, false);
    case StructKind::TildeMinus: return omega_pm(mod, m, -1, false);
  }
  throw std::invalid_argument("make_struct: unknown kind");
}

}  // namespace iwa
