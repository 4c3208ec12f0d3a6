#pragma once

#include <map>
#include <mutex>
#include <random>
#include <tuple>
#include <vector>

#include "iwasawa/error.hpp"
#include "iwasawa/poly.hpp"

namespace iwa {

/// Upper bound on p^m for a single level; keeps dense storage predictable.
inline constexpr u64 kMaxLevelDegree = 3125;

namespace detail {

/// omega_m and Phi_m are reused constantly; memoize per (p, N, m).
inline const ZpPoly& cached_struct(const Modulus& mod, int m, bool phi) {
  static std::mutex mu;
  static std::map<std::tuple<u64, int, int, bool>, ZpPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(mod.p(), mod.precision(), m, phi);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, phi ? phi_poly(mod, m) : omega_poly(mod, m)).first;
  return it->second;
}

}  // namespace detail

inline const ZpPoly& omega_cached(const Modulus& mod, int m) { return detail::cached_struct(mod, m, false); }
inline const ZpPoly& phi_cached(const Modulus& mod, int m) { return detail::cached_struct(mod, m, true); }

inline u64 level_degree(u64 p, int m) {
  u64 d = 1;
  for (int i = 0; i < m; ++i) {
    d *= p;
    if (d > kMaxLevelDegree) throw std::invalid_argument("level exceeds configured bound p^m <= 3125");
  }
  return d;
}

/// An element of (Z/p^n)[X]/(omega_m), stored as its canonical remainder.
class IwasawaElem {
 public:
  IwasawaElem() = default;
  IwasawaElem(const Modulus& mod, int level) : mod_(mod), level_(level), f_(mod) {
    if (level < 0) throw std::invalid_argument("IwasawaElem: negative level");
    level_degree(mod.p(), level);
  }
  IwasawaElem(const Modulus& mod, int level, const ZpPoly& f) : IwasawaElem(mod, level) {
    ZpPoly g = f.modulus() == mod ? f : ZpPoly(mod, f.coeffs());
    f_ = static_cast<u64>(g.size()) > dim() ? poly_mod(g, omega_cached(mod, level)) : g;
  }
  IwasawaElem(const Modulus& mod, int level, std::vector<u64> coeffs)
      : IwasawaElem(mod, level, ZpPoly(mod, std::move(coeffs))) {}

  static IwasawaElem constant(const Modulus& mod, int level, i64 c) {
    return IwasawaElem(mod, level, ZpPoly::constant(mod, c));
  }
  static IwasawaElem X(const Modulus& mod, int level) {
    return IwasawaElem(mod, level, ZpPoly::monomial(mod, 1));
  }
  static IwasawaElem gamma(const Modulus& mod, int level) {
    return IwasawaElem(mod, level, ZpPoly::gamma(mod));
  }
  /// gamma^k for any integer k (gamma has order p^m).
  static IwasawaElem gamma_power(const Modulus& mod, int level, i64 k) {
    i64 d = static_cast<i64>(level_degree(mod.p(), level));
    std::vector<u64> c(d, 0);
    c[((k % d) + d) % d] = mod.reduce_u(1);
    return from_gamma_basis(mod, level, c);
  }
  /// Element sum_k c_k gamma^k, k < p^m.
  static IwasawaElem from_gamma_basis(const Modulus& mod, int level, const std::vector<u64>& c) {
    // Horner in gamma = 1 + X; degree stays below p^m so no reduction is needed
    std::vector<u64> acc;
    for (std::size_t i = c.size(); i-- > 0;) {
      std::vector<u64> next(acc.size() + 1, 0);
      for (std::size_t j = 0; j < acc.size(); ++j) {
        next[j] = mod.add(next[j], acc[j]);
        next[j + 1] = mod.add(next[j + 1], acc[j]);
      }
      next[0] = mod.add(next[0], mod.reduce_u(c[i]));
      acc.swap(next);
    }
    return IwasawaElem(mod, level, ZpPoly(mod, std::move(acc)));
  }
  static IwasawaElem random(const Modulus& mod, int level, std::mt19937_64& rng) {
    std::vector<u64> c(level_degree(mod.p(), level));
    for (auto& x : c) x = rng() % mod.value();
    return IwasawaElem(mod, level, std::move(c));
  }

  const Modulus& modulus() const { return mod_; }
  u64 p() const { return mod_.p(); }
  int precision() const { return mod_.precision(); }
  int level() const { return level_; }
  u64 dim() const { return level_degree(mod_.p(), level_); }
  const ZpPoly& poly() const { return f_; }
  u64 coeff(std::size_t i) const { return f_.coeff(i); }
  /// Dense X-basis coefficients, padded to p^m.
  std::vector<u64> coeffs() const {
    std::vector<u64> c(dim(), 0);
    for (std::size_t i = 0; i < f_.size(); ++i) c[i] = f_.coeffs()[i];
    return c;
  }
  /// Dense gamma-basis coefficients.
  std::vector<u64> gamma_coeffs() const {
    // Horner in X = gamma - 1
    const u64 d = dim();
    std::vector<u64> acc(d, 0);
    for (std::size_t i = f_.size(); i-- > 0;) {
      std::vector<u64> next(d, 0);
      for (std::size_t j = 0; j < d; ++j) {
        if (acc[j] == 0) continue;
        next[j] = mod_.sub(next[j], acc[j]);
        if (j + 1 < d) next[j + 1] = mod_.add(next[j + 1], acc[j]);
      }
      next[0] = mod_.add(next[0], f_.coeffs()[i]);
      acc.swap(next);
    }
    return acc;
  }
  bool is_zero() const { return f_.is_zero(); }
  u64 constant_term() const { return f_.coeff(0); }
  bool is_unit() const { return mod_.is_unit(constant_term()); }

  IwasawaElem reduce_to(int n) const { return IwasawaElem(mod_.with_precision(n), level_, f_.reduce_to(n)); }

  /// Inverse of a unit by Newton iteration; (p, X) is nilpotent here.
  IwasawaElem inverse() const {
    if (!is_unit()) throw ContractViolation("IwasawaElem::inverse: constant term is not a p-unit");
    IwasawaElem one = constant(mod_, level_, 1);
    IwasawaElem two = constant(mod_, level_, 2);
    IwasawaElem x = constant(mod_, level_, static_cast<i64>(mod_.inv(constant_term())));
    for (int it = 0; it < 64; ++it) {
      if (*this * x == one) return x;
      x = x * (two - *this * x);
    }
    throw ContractViolation("IwasawaElem::inverse: Newton iteration did not converge");
  }

  IwasawaElem operator-() const { return IwasawaElem(mod_, level_, -f_); }
  friend IwasawaElem operator+(const IwasawaElem& a, const IwasawaElem& b) {
    check_same_level(a, b);
    return IwasawaElem(common_modulus(a.mod_, b.mod_), a.level_, a.f_ + b.f_);
  }
  friend IwasawaElem operator-(const IwasawaElem& a, const IwasawaElem& b) {
    check_same_level(a, b);
    return IwasawaElem(common_modulus(a.mod_, b.mod_), a.level_, a.f_ - b.f_);
  }
  friend IwasawaElem operator*(const IwasawaElem& a, const IwasawaElem& b) {
    check_same_level(a, b);
    return IwasawaElem(common_modulus(a.mod_, b.mod_), a.level_, a.f_ * b.f_);
  }
  IwasawaElem scaled(u64 s) const { return IwasawaElem(mod_, level_, f_.scaled(s)); }
  IwasawaElem scaled(const PAdicScalar& s) const { return scaled(s.value()); }
  IwasawaElem& operator+=(const IwasawaElem& o) { return *this = *this + o; }
  IwasawaElem& operator-=(const IwasawaElem& o) { return *this = *this - o; }
  IwasawaElem& operator*=(const IwasawaElem& o) { return *this = *this * o; }

  friend bool operator==(const IwasawaElem& a, const IwasawaElem& b) {
    return a.level_ == b.level_ && a.f_ == b.f_;
  }

  std::string to_string() const { return f_.to_string(); }

 private:
  static void check_same_level(const IwasawaElem& a, const IwasawaElem& b) {
    if (a.level_ != b.level_)
      throw std::invalid_argument("IwasawaElem: level mismatch " + std::to_string(a.level_) + " vs " +
                                  std::to_string(b.level_));
  }

  Modulus mod_;
  int level_ = 0;
  ZpPoly f_;
};

/// Natural projection to a lower level: reduction mod omega_target.
inline IwasawaElem project_to(const IwasawaElem& x, int target) {
  if (target > x.level() || target < 0) throw std::invalid_argument("project_to: bad target level");
  return IwasawaElem(x.modulus(), target, x.poly());
}
inline IwasawaElem project(const IwasawaElem& x) { return project_to(x, x.level() - 1); }

/// Norm from level m-1 to level m: multiply a lift by Phi_m.
inline IwasawaElem norm(const IwasawaElem& x) {
  int m = x.level() + 1;
  return IwasawaElem(x.modulus(), m, x.poly() * phi_cached(x.modulus(), m));
}

/// Ring map gamma -> gamma^{-1}.
inline IwasawaElem involute(const IwasawaElem& x) {
  auto c = x.gamma_coeffs();
  std::vector<u64> r(c.size(), 0);
  for (std::size_t k = 0; k < c.size(); ++k) r[k == 0 ? 0 : c.size() - k] = c[k];
  return IwasawaElem::from_gamma_basis(x.modulus(), x.level(), r);
}

/// Image of x in (Z/p^n)[X]/(Phi_j(1+X)); j = 0 evaluates at X = 0.
inline ZpPoly eval_char(const IwasawaElem& x, int j) {
  if (j < 0 || j > x.level()) throw std::invalid_argument("eval_char: character level out of range");
  if (j == 0) return ZpPoly::constant(x.modulus(), static_cast<i64>(x.constant_term()));
  return poly_mod(x.poly(), phi_cached(x.modulus(), j));
}

/// The structural polynomial viewed in Lambda_{m,n}.
inline IwasawaElem as_elem(const Modulus& mod, int level, const ZpPoly& f) { return IwasawaElem(mod, level, f); }

}  // namespace iwa
