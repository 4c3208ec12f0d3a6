#pragma once

#include <optional>

#include "iwasawa/theta.hpp"

namespace iwa {

/// p^{-e} * body, entries in Lambda_{m,N'} where N' drops as p's are divided out.
struct ScaledMat2 {
  ElemMat body;
  int e = 0;
  int level = 0;
  std::optional<std::size_t> x_precision;  // report entries mod X^D when set

  int precision() const { return body.a.precision(); }
  int effective_precision() const { return precision() - e; }

  /// p^k times the value for k >= e, at k - e more digits.
  ElemMat cleared(int k) const {
    if (k < e) throw std::invalid_argument("ScaledMat2::cleared: exponent below the denominator");
    const Modulus hi = body.a.modulus().with_precision(precision() + k - e);
    u64 pk = hi.p_power(k - e);
    auto lift = [&](const IwasawaElem& x) {
      Row c = x.coeffs();
      for (auto& y : c) y = hi.mul(y, pk);
      return IwasawaElem(hi, level, c);
    };
    return body.map(lift);
  }
};

inline bool all_divisible_by_p(const ElemMat& m) {
  return m.all_of([](const IwasawaElem& x) { return x.poly().divisible_by_p_power(1); });
}

inline ElemMat divide_by_p(const ElemMat& m) {
  return m.map([](const IwasawaElem& x) {
    return IwasawaElem(x.modulus().with_precision(x.precision() - 1), x.level(), x.poly().divide_by_p_power(1));
  });
}

/// M_m = B^{-m-1} C_m ... C_1 = p^{-(m+1)} adj(B)^{m+1} C_m ... C_1 at working precision N.
inline ScaledMat2 mat_M(const PAdicScalar& ap, int m, int N, std::optional<std::size_t> D = std::nullopt) {
  if (N < m + 2) throw PrecisionExhausted("mat_M: need N > m + 1");
  PAdicScalar a(Modulus(ap.p(), N), static_cast<i64>(ap.value()));
  ElemMat adjB = mat_B(a, m).adj();
  ElemMat body = matrix_H(a, m);
  for (int i = 0; i <= m; ++i) body = adjB * body;
  ScaledMat2 r{body, m + 1, m, D};
  while (r.e > 0 && all_divisible_by_p(r.body)) {
    r.body = divide_by_p(r.body);
    --r.e;
  }
  return r;
}

/// Entries of a scaled matrix truncated mod X^D (or untouched without D).
inline Mat2<ZpPoly> x_truncated(const ScaledMat2& s) {
  auto tr = [&](const IwasawaElem& x) { return s.x_precision ? x.poly().truncate(*s.x_precision) : x.poly(); };
  return {tr(s.body.a), tr(s.body.b), tr(s.body.c), tr(s.body.d)};
}

/// p^{m+2} (M_{m+1} - M_m) reduced mod omega_m; identically zero when the
/// arithmetic is right.
inline ElemMat convergence_defect(const PAdicScalar& ap, int m, int N) {
  ElemMat hi = mat_M(ap, m + 1, N).cleared(m + 2);
  ElemMat lo = mat_M(ap, m, N).cleared(m + 2);
  ElemMat hp = hi.map([&](const IwasawaElem& x) { return project_to(x, m); });
  return hp - lo;
}

inline bool is_zero(const ElemMat& m) {
  return m.all_of([](const IwasawaElem& x) { return x.is_zero(); });
}

/// Q^{-1} M_m (sharp, flat) = (L^alpha_m, L^beta_m), multiplied through by p^{m+2}:
/// [[p, beta], [p, alpha]] adj(B)^{m+1} H_m (sharp, flat) against p^{m+2} L^lambda_m.
///
/// (sharp, flat) should come from a decomposition at horizon m.
inline DefectReport linear_combo_check(const ElemPair& sf, const StabSeq& stab_alpha, const StabSeq& stab_beta, int m) {
  if (sf.x.level() != m) throw std::invalid_argument("linear_combo_check: sharp/flat must sit at level m");
  const PAdicScalar& ap = stab_alpha.ap;
  const u64 a = ap.value(), p = ap.p();
  const int N = sf.x.precision();
  auto roots = quad_roots(ap);
  ScaledMat2 M = mat_M(ap, m, N);
  ElemPair v = M.cleared(m + 1).apply(sf);
  QuadElem x = QuadElem::embed(v.x, a), y = QuadElem::embed(v.y, a);
  QuadElem lhs_a = p * x + roots.beta * y;
  QuadElem lhs_b = p * x + roots.alpha * y;
  DefectReport r;
  detail::collect_defect(r, lhs_a, stab_alpha.terms.at(m).cleared(m + 2), 0);
  detail::collect_defect(r, lhs_b, stab_beta.terms.at(m).cleared(m + 2), 2 * sf.x.dim());
  if (!r.ok) r.detail = "linear combination identity fails at level " + std::to_string(m);
  return r;
}

}  // namespace iwa
