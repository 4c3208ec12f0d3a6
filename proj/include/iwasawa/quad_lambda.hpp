#pragma once

#include <algorithm>

#include "iwasawa/lambda.hpp"
#include "iwasawa/padic.hpp"

namespace iwa {

/// u + v*alpha with u, v in Lambda_{m,n} and alpha^2 = a_p*alpha - p.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(IwasawaElem u, IwasawaElem v, u64 ap) : u_(std::move(u)), v_(std::move(v)), ap_(ap) {
    if (u_.level() != v_.level()) throw std::invalid_argument("QuadElem: level mismatch");
  }
  static QuadElem embed(const IwasawaElem& x, u64 ap) { return QuadElem(x, IwasawaElem(x.modulus(), x.level()), ap); }
  static QuadElem zero(const Modulus& mod, int level, u64 ap) {
    return QuadElem(IwasawaElem(mod, level), IwasawaElem(mod, level), ap);
  }

  const IwasawaElem& u() const { return u_; }
  const IwasawaElem& v() const { return v_; }
  u64 ap() const { return ap_; }
  int level() const { return u_.level(); }
  const Modulus& modulus() const { return u_.precision() <= v_.precision() ? u_.modulus() : v_.modulus(); }
  int precision() const { return std::min(u_.precision(), v_.precision()); }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

  bool divisible_by_p() const { return u_.poly().divisible_by_p_power(1) && v_.poly().divisible_by_p_power(1); }

  QuadElem divide_by_p() const {
    const Modulus lo = modulus().with_precision(precision() - 1);
    return QuadElem(IwasawaElem(lo, level(), u_.poly().divide_by_p_power(1)),
                    IwasawaElem(lo, level(), v_.poly().divide_by_p_power(1)), ap_);
  }
  /// p^k * x, which is known to k more digits than x.
  QuadElem times_p_power(int k) const {
    const Modulus hi = modulus().with_precision(precision() + k);
    u64 pk = hi.p_power(k);
    auto lift = [&](const IwasawaElem& x) {
      std::vector<u64> c = x.coeffs();
      for (auto& y : c) y = hi.mul(y, pk);
      return IwasawaElem(hi, level(), c);
    };
    return QuadElem(lift(u_), lift(v_), ap_);
  }

  QuadElem reduce_to(int n) const { return QuadElem(u_.reduce_to(n), v_.reduce_to(n), ap_); }

  QuadElem operator-() const { return QuadElem(-u_, -v_, ap_); }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b) { return QuadElem(a.u_ + b.u_, a.v_ + b.v_, a.ap_); }
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b) { return QuadElem(a.u_ - b.u_, a.v_ - b.v_, a.ap_); }
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    IwasawaElem vv = a.v_ * b.v_;
    const u64 p = a.u_.p();
    return QuadElem(a.u_ * b.u_ - vv.scaled(p), a.u_ * b.v_ + a.v_ * b.u_ + vv.scaled(a.ap_), a.ap_);
  }
  friend QuadElem operator*(const QuadScalar& c, const QuadElem& x) {
    const Modulus& mod = x.modulus();
    IwasawaElem cu = IwasawaElem::constant(mod, x.level(), static_cast<i64>(c.u().value()));
    IwasawaElem cv = IwasawaElem::constant(mod, x.level(), static_cast<i64>(c.v().value()));
    return QuadElem(cu, cv, x.ap_) * x;
  }
  friend QuadElem operator*(u64 c, const QuadElem& x) { return QuadElem(x.u_.scaled(c), x.v_.scaled(c), x.ap_); }

  friend bool operator==(const QuadElem& a, const QuadElem& b) { return a.u_ == b.u_ && a.v_ == b.v_; }

 private:
  IwasawaElem u_, v_;
  u64 ap_ = 0;
};

inline QuadElem project_to(const QuadElem& x, int level) {
  return QuadElem(project_to(x.u(), level), project_to(x.v(), level), x.ap());
}

/// The extension uniformizer alpha - beta = 2*alpha - a_p as a constant.
inline QuadElem uniformizer_elem(const Modulus& mod, int level, u64 ap) {
  return QuadElem(IwasawaElem::constant(mod, level, -static_cast<i64>(mod.reduce_u(ap))),
                  IwasawaElem::constant(mod, level, 2), ap);
}

/// body / (p^floor(d/2) * (alpha-beta)^(d mod 2)) with one denominator for all coefficients.
///
/// Only divisions by p are normalized away; they are lossless because the
/// exponent and the known digits drop together.
class ScaledQuadElem {
 public:
  ScaledQuadElem() = default;
  ScaledQuadElem(QuadElem body, int d) : body_(std::move(body)), d_(d) {
    if (d < 0) throw std::invalid_argument("ScaledQuadElem: negative denominator exponent");
    while (d_ >= 2 && body_.precision() > 0 && body_.divisible_by_p()) {
      body_ = body_.divide_by_p();
      d_ -= 2;
    }
  }

  const QuadElem& body() const { return body_; }
  int denom_exp() const { return d_; }
  int level() const { return body_.level(); }
  int effective_precision() const { return body_.precision() - (d_ + 1) / 2; }
  bool exhausted() const { return effective_precision() <= 0; }

  /// p^e times the value, as an integral element.
  QuadElem cleared(int e) const {
    const int need = (d_ + 1) / 2;
    if (e < need) throw std::invalid_argument("ScaledQuadElem::cleared: exponent below the denominator");
    QuadElem b = body_;
    if (d_ & 1) {
      // p / (alpha-beta) = (alpha-beta) / disc_unit
      const Modulus& mod = b.modulus();
      PAdicScalar ap(mod, static_cast<i64>(mod.reduce_u(b.ap())));
      b = disc_unit(ap).inverse().value() * (uniformizer_elem(mod, b.level(), b.ap()) * b);
    }
    return b.times_p_power(e - need);
  }

 private:
  QuadElem body_;
  int d_ = 0;
};

inline ScaledQuadElem project_to(const ScaledQuadElem& x, int level) {
  return ScaledQuadElem(project_to(x.body(), level), x.denom_exp());
}

/// Equal as values at the smaller effective precision.
inline bool scaled_equal(const ScaledQuadElem& a, const ScaledQuadElem& b) {
  int e = std::max((a.denom_exp() + 1) / 2, (b.denom_exp() + 1) / 2);
  QuadElem x = a.cleared(e), y = b.cleared(e);
  int n = std::min(x.precision(), y.precision());
  return x.reduce_to(n) == y.reduce_to(n);
}

}  // namespace iwa
