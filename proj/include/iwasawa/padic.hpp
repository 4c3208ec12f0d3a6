#pragma once

#include <string>
#include <utility>

#include "iwasawa/error.hpp"
#include "iwasawa/modular.hpp"

namespace iwa {

/// An element of Z/p^N. Values at different precisions combine at the
/// smaller one (capped absolute precision).
class PAdicScalar {
 public:
  PAdicScalar() = default;
  PAdicScalar(const Modulus& mod, i64 v) : mod_(mod), v_(mod.reduce(v)) {}

  static PAdicScalar from_residue(const Modulus& mod, u64 r) {
    PAdicScalar s;
    s.mod_ = mod;
    s.v_ = mod.reduce_u(r);
    return s;
  }

  u64 value() const { return v_; }
  u64 p() const { return mod_.p(); }
  int precision() const { return mod_.precision(); }
  const Modulus& modulus() const { return mod_; }

  bool is_zero() const { return v_ == 0; }
  bool is_unit() const { return mod_.is_unit(v_); }

  /// Image in Z/p^n for n <= N.
  PAdicScalar reduce_to(int n) const {
    if (n > precision()) throw std::invalid_argument("reduce_to: cannot raise precision");
    return from_residue(mod_.with_precision(n), v_);
  }

  PAdicScalar inverse() const { return from_residue(mod_, mod_.inv(v_)); }

  /// Exact quotient by p^k; the result is known modulo p^(N-k).
  PAdicScalar divide_by_p_power(int k) const {
    if (k > precision()) throw PrecisionExhausted("divide_by_p_power: k exceeds precision");
    if (mod_.val(v_) < k) throw ContractViolation("divide_by_p_power: not divisible");
    u64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= p();
    return from_residue(mod_.with_precision(precision() - k), v_ / pk);
  }

  std::string to_string() const { return std::to_string(v_); }

  friend PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    return from_residue(m, m.add(m.reduce_u(a.v_), m.reduce_u(b.v_)));
  }
  friend PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    return from_residue(m, m.sub(m.reduce_u(a.v_), m.reduce_u(b.v_)));
  }
  friend PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    return from_residue(m, m.mul(m.reduce_u(a.v_), m.reduce_u(b.v_)));
  }
  PAdicScalar operator-() const { return from_residue(mod_, mod_.neg(v_)); }
  PAdicScalar& operator+=(const PAdicScalar& o) { return *this = *this + o; }
  PAdicScalar& operator-=(const PAdicScalar& o) { return *this = *this - o; }
  PAdicScalar& operator*=(const PAdicScalar& o) { return *this = *this * o; }

  /// Equality of residues at the common precision.
  friend bool operator==(const PAdicScalar& a, const PAdicScalar& b) {
    Modulus m = common_modulus(a.mod_, b.mod_);
    return m.reduce_u(a.v_) == m.reduce_u(b.v_);
  }

 private:
  Modulus mod_;
  u64 v_ = 0;
};

/// p-adic valuation; kInfiniteValuation for the zero class.
inline int val_p(const PAdicScalar& s) { return s.modulus().val(s.value()); }

/// u + v*alpha in Z/p^N[x]/(x^2 - ap*x + p), where ap has positive valuation.
///
/// alpha is a uniformizer of this (totally ramified) order, and the element
/// is divisible by alpha exactly when p | u.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(PAdicScalar u, PAdicScalar v, PAdicScalar ap)
      : u_(std::move(u)), v_(std::move(v)), ap_(std::move(ap)) {
    if (val_p(ap_) < 1)
      throw std::invalid_argument("QuadScalar: a_p must have positive valuation (ordinary case)");
  }

  static QuadScalar embed(const PAdicScalar& u, const PAdicScalar& ap) {
    return QuadScalar(u, PAdicScalar(u.modulus(), 0), ap);
  }

  const PAdicScalar& u() const { return u_; }
  const PAdicScalar& v() const { return v_; }
  const PAdicScalar& ap() const { return ap_; }
  const Modulus& modulus() const { return u_.modulus(); }
  int precision() const { return std::min(u_.precision(), v_.precision()); }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool is_unit() const { return u_.is_unit(); }
  bool divisible_by_p() const { return val_p(u_) >= 1 && val_p(v_) >= 1; }
  bool divisible_by_uniformizer() const { return val_p(u_) >= 1; }

  /// Valuation in half-units (the uniformizer has valuation 1).
  int half_valuation() const {
    int vu = val_p(u_), vv = val_p(v_);
    long a = vu == kInfiniteValuation ? kInfiniteValuation : 2L * vu;
    long b = vv == kInfiniteValuation ? kInfiniteValuation : 2L * vv + 1;
    long r = std::min(a, b);
    return r >= kInfiniteValuation ? kInfiniteValuation : static_cast<int>(r);
  }

  /// Galois conjugate: alpha -> beta = ap - alpha.
  QuadScalar conj() const { return QuadScalar(u_ + v_ * ap_, -v_, ap_); }
  /// x * conj(x), an element of Z/p^N.
  PAdicScalar norm() const {
    PAdicScalar p(modulus(), static_cast<i64>(modulus().p()));
    return u_ * u_ + ap_ * u_ * v_ + p * v_ * v_;
  }
  QuadScalar inverse() const {
    if (!is_unit()) throw std::domain_error("QuadScalar: inverse of a non-unit");
    PAdicScalar ninv = norm().inverse();
    QuadScalar c = conj();
    return QuadScalar(c.u_ * ninv, c.v_ * ninv, ap_);
  }

  QuadScalar reduce_to(int n) const { return QuadScalar(u_.reduce_to(n), v_.reduce_to(n), ap_); }

  friend QuadScalar operator+(const QuadScalar& a, const QuadScalar& b) {
    return QuadScalar(a.u_ + b.u_, a.v_ + b.v_, a.ap_);
  }
  friend QuadScalar operator-(const QuadScalar& a, const QuadScalar& b) {
    return QuadScalar(a.u_ - b.u_, a.v_ - b.v_, a.ap_);
  }
  friend QuadScalar operator*(const QuadScalar& a, const QuadScalar& b) {
    PAdicScalar p(a.modulus(), static_cast<i64>(a.modulus().p()));
    PAdicScalar vv = a.v_ * b.v_;
    return QuadScalar(a.u_ * b.u_ - p * vv, a.u_ * b.v_ + a.v_ * b.u_ + a.ap_ * vv, a.ap_);
  }
  friend QuadScalar operator*(const PAdicScalar& c, const QuadScalar& x) {
    return QuadScalar(c * x.u_, c * x.v_, x.ap_);
  }
  QuadScalar operator-() const { return QuadScalar(-u_, -v_, ap_); }

  friend bool operator==(const QuadScalar& a, const QuadScalar& b) {
    return a.u_ == b.u_ && a.v_ == b.v_;
  }

  std::string to_string() const { return u_.to_string() + "+" + v_.to_string() + "*alpha"; }

 private:
  PAdicScalar u_, v_, ap_;
};

/// Roots alpha, beta of x^2 - ap*x + p.
struct QuadRoots {
  QuadScalar alpha;
  QuadScalar beta;
};

inline QuadRoots quad_roots(const PAdicScalar& ap) {
  if (val_p(ap) < 1)
    throw std::invalid_argument("quad_roots: a_p is a unit (ordinary case is out of scope)");
  const Modulus& m = ap.modulus();
  return {QuadScalar(PAdicScalar(m, 0), PAdicScalar(m, 1), ap),
          QuadScalar(ap, PAdicScalar(m, -1), ap)};
}

/// alpha - beta, the uniformizer used for half-unit denominators.
inline QuadScalar uniformizer(const PAdicScalar& ap) {
  return QuadScalar(-ap, PAdicScalar(ap.modulus(), 2), ap);
}

/// The unit (ap^2 - 4p)/p, so that (alpha - beta)^2 = p * disc_unit.
inline PAdicScalar disc_unit(const PAdicScalar& ap) {
  const Modulus& m = ap.modulus();
  // any lift of ap/p gives the same product since p | ap
  u64 a = ap.value();
  u64 a_over_p = a / m.p();
  return PAdicScalar::from_residue(m, m.sub(m.mul(a, a_over_p), m.reduce(4)));
}

namespace detail {

inline QuadScalar divide_by_p(const QuadScalar& x) {
  return QuadScalar(x.u().divide_by_p_power(1), x.v().divide_by_p_power(1),
                    x.ap().reduce_to(x.precision() - 1));
}

/// x / (alpha - beta), computed as x*(alpha-beta) / (p*disc_unit); costs one digit.
inline QuadScalar divide_by_uniformizer(const QuadScalar& x) {
  if (!x.divisible_by_uniformizer())
    throw ContractViolation("divide_by_uniformizer: not divisible");
  QuadScalar y = divide_by_p(x * uniformizer(x.ap()));
  return disc_unit(y.ap()).inverse() * y;
}

}  // namespace detail

/// body / (p^floor(d/2) * (alpha-beta)^(d mod 2)), d counted in half-units.
///
/// The body is kept modulo p^N; the value is then known to N - ceil(d/2)
/// digits, which is what effective_precision() reports.
class ScaledScalar {
 public:
  ScaledScalar() = default;
  ScaledScalar(QuadScalar body, int denom_exp) : body_(std::move(body)), d_(denom_exp) {
    if (d_ < 0) throw std::invalid_argument("ScaledScalar: negative denominator exponent");
    normalize();
  }

  static ScaledScalar integral(const QuadScalar& x) { return ScaledScalar(x, 0); }
  static ScaledScalar integral(const PAdicScalar& x, const PAdicScalar& ap) {
    return ScaledScalar(QuadScalar::embed(x, ap), 0);
  }
  /// 1 / (alpha - beta)^k. Since (alpha-beta)^2 = p*u, the body is u^floor(k/2).
  static ScaledScalar inverse_uniformizer_power(const PAdicScalar& ap, int k) {
    PAdicScalar u = disc_unit(ap), b(ap.modulus(), 1);
    for (int i = 0; i < k / 2; ++i) b *= u;
    return ScaledScalar(QuadScalar::embed(b, ap), k);
  }
  /// 1 / p^k
  static ScaledScalar inverse_p_power(const PAdicScalar& ap, int k) {
    return ScaledScalar(QuadScalar::embed(PAdicScalar(ap.modulus(), 1), ap), 2 * k);
  }

  const QuadScalar& body() const { return body_; }
  int denom_exp() const { return d_; }
  int effective_precision() const { return body_.precision() - (d_ + 1) / 2; }
  bool exhausted() const { return effective_precision() <= 0; }

  friend ScaledScalar scaled_mul(const ScaledScalar& a, const ScaledScalar& b) {
    QuadScalar body = a.body_ * b.body_;
    if ((a.d_ & 1) && (b.d_ & 1)) body = disc_unit(body.ap()).inverse() * body;
    ScaledScalar r;
    r.body_ = body;
    r.d_ = a.d_ + b.d_;
    r.normalize();
    return r;
  }
  friend ScaledScalar operator*(const ScaledScalar& a, const ScaledScalar& b) { return scaled_mul(a, b); }

  friend ScaledScalar operator+(const ScaledScalar& a, const ScaledScalar& b) {
    int d = std::max(a.d_, b.d_);
    ScaledScalar x = a.raised_to_(d), y = b.raised_to_(d);
    ScaledScalar r;
    r.body_ = x.body_ + y.body_;
    r.d_ = d;
    r.normalize();
    return r;
  }
  ScaledScalar operator-() const {
    ScaledScalar r = *this;
    r.body_ = -r.body_;
    return r;
  }
  friend ScaledScalar operator-(const ScaledScalar& a, const ScaledScalar& b) { return a + (-b); }

  /// Equal as values, at the smaller of the two effective precisions.
  friend bool operator==(const ScaledScalar& a, const ScaledScalar& b) {
    return (a - b).body_.is_zero();
  }

 private:
  ScaledScalar raise_(int k) const {
    ScaledScalar r = *this;
    for (int i = 0; i < k; ++i) {
      r.body_ = r.body_ * uniformizer(r.body_.ap());
      if (r.d_ & 1) r.body_ = disc_unit(r.body_.ap()).inverse() * r.body_;
      ++r.d_;
    }
    return r;
  }
  ScaledScalar raised_to_(int d) const { return raise_(d - d_); }

  void normalize() {
    while (d_ > 0) {
      if (body_.is_zero()) {
        int eff = std::max(0, effective_precision());
        body_ = body_.reduce_to(eff);
        d_ = 0;
        return;
      }
      if (body_.precision() <= 0) return;
      if ((d_ & 1) == 0 && body_.divisible_by_p()) {
        body_ = detail::divide_by_p(body_);
        d_ -= 2;
      } else if (body_.divisible_by_uniformizer()) {
        QuadScalar q = detail::divide_by_uniformizer(body_);
        // even -> odd: p = (alpha-beta)^2 / disc_unit
        body_ = (d_ & 1) ? q : disc_unit(q.ap()) * q;
        d_ -= 1;
      } else {
        return;
      }
    }
  }

  QuadScalar body_;
  int d_ = 0;
};

}  // namespace iwa
