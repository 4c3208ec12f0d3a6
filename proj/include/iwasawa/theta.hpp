#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/error.hpp"
#include "iwasawa/quad_lambda.hpp"
#include "iwasawa/sprung.hpp"

namespace iwa {

/// Values on the labels (delta, k) of Delta x G_m, where k is the exponent of
/// the chosen generator gamma of G_m.
struct ThetaTable {
  Modulus mod;
  int level = 0;
  int delta_order = 1;
  std::map<std::pair<int, u64>, u64> values;

  /// Throws SchemaError on a missing, duplicate or out-of-range label.
  void validate() const {
    const u64 d = level_degree(mod.p(), level);
    if (delta_order < 1) throw SchemaError("delta_order", "must be >= 1");
    for (const auto& [label, v] : values) {
      if (label.first < 0 || label.first >= delta_order || label.second >= d)
        throw SchemaError("entries", "label (" + std::to_string(label.first) + ", " + std::to_string(label.second) +
                                         ") out of range");
    }
    const u64 want = static_cast<u64>(delta_order) * d;
    if (values.size() != want)
      throw SchemaError("entries", "expected " + std::to_string(want) + " labels, got " + std::to_string(values.size()));
  }
};

/// sum over Delta-fibres of h(delta, k) * gamma^{-k}, written in the X basis.
inline IwasawaElem assemble(const ThetaTable& t) {
  t.validate();
  const u64 d = level_degree(t.mod.p(), t.level);
  std::vector<u64> c(d, 0);
  for (const auto& [label, v] : t.values) {
    u64 k = label.second == 0 ? 0 : d - label.second;
    c[k] = t.mod.add(c[k], t.mod.reduce_u(v));
  }
  return IwasawaElem::from_gamma_basis(t.mod, t.level, c);
}

inline std::optional<int> check_theta_norm(const std::vector<IwasawaElem>& seq, const PAdicScalar& ap) {
  return verify_norm_relation(NormSeq(ap, seq, SeqMode::Lenient));
}

/// x * x^iota
inline IwasawaElem lp_product(const IwasawaElem& x) { return x * involute(x); }

/// The stabilized terms L^lambda_m for m = 0..M.
struct StabSeq {
  PAdicScalar ap;
  QuadScalar lambda;
  std::vector<ScaledQuadElem> terms;
};

/// L^lambda_m = lambda^{-(m+2)} (lambda L_m - xi L_{m-1})
///            = lambda'^{m+2} (lambda L_m - xi L_{m-1}) / p^{m+2},
/// with lambda' the other root. Level 0 uses -xi L_{-1} := pi(L_1) - a_p L_0.
inline StabSeq pstabilize(const NormSeq& seq, const QuadScalar& lambda, int target_n = 1) {
  const int M = seq.horizon();
  if (M < 1) throw std::invalid_argument("pstabilize: horizon must be >= 1");
  if (auto bad = verify_norm_relation(seq))
    throw ContractViolation("pstabilize: norm relation fails at index " + std::to_string(*bad));
  const PAdicScalar& ap = seq.ap();
  auto roots = quad_roots(ap);
  QuadScalar other;
  if (lambda == roots.alpha)
    other = roots.beta;
  else if (lambda == roots.beta)
    other = roots.alpha;
  else
    throw std::invalid_argument("pstabilize: lambda must be a root of x^2 - a_p x + p");

  StabSeq out{ap, lambda, {}};
  const Modulus& mod = seq.modulus();
  for (int m = 0; m <= M; ++m) {
    if (seq.precision() - (m + 2) < target_n)
      throw PrecisionExhausted("pstabilize: working precision " + std::to_string(seq.precision()) +
                               " leaves fewer than " + std::to_string(target_n) + " digits at level " +
                               std::to_string(m));
    QuadScalar lp = QuadScalar::embed(PAdicScalar(mod, 1), ap);
    for (int i = 0; i < m + 2; ++i) lp = lp * other;
    QuadElem inner = lambda * QuadElem::embed(seq[m], ap.value()) + QuadElem::embed(seq.second_row(m), ap.value());
    out.terms.emplace_back(lp * inner, 2 * (m + 2));
  }
  for (int m = 0; m < M; ++m)
    if (!scaled_equal(project_to(out.terms[m + 1], m), out.terms[m]))
      throw ContractViolation("pstabilize: stabilized terms are not projection compatible at level " +
                              std::to_string(m));
  return out;
}

struct DefectReport {
  bool ok = true;
  std::vector<std::size_t> positions;  // coefficient slots that disagree
  std::string detail;
};

namespace detail {

inline void collect_defect(DefectReport& r, const QuadElem& lhs, const QuadElem& rhs, std::size_t offset) {
  int n = std::min(lhs.precision(), rhs.precision());
  QuadElem a = lhs.reduce_to(n), b = rhs.reduce_to(n);
  auto au = a.u().coeffs(), bu = b.u().coeffs(), av = a.v().coeffs(), bv = b.v().coeffs();
  for (std::size_t i = 0; i < au.size(); ++i) {
    if (au[i] != bu[i]) r.positions.push_back(offset + i);
    if (av[i] != bv[i]) r.positions.push_back(offset + au.size() + i);
  }
  r.ok = r.positions.empty();
}

/// B^k (x, y) with B = [[a_p, 1], [-p, 0]].
inline Vec2<QuadElem> apply_B_power(const Vec2<QuadElem>& v, int k, u64 ap, u64 p) {
  Vec2<QuadElem> w = v;
  for (int i = 0; i < k; ++i) w = {ap * w.x + w.y, -(p * w.x)};
  return w;
}

}  // namespace detail

/// B^{m+1} Q (L^alpha_m, L^beta_m) = (L_m, -xi L_{m-1}), multiplied through by
/// p^{m+2} (alpha - beta) so that both sides are integral.
inline DefectReport verify_stab_identity(const NormSeq& seq, const StabSeq& stab_alpha, const StabSeq& stab_beta,
                                         int m) {
  if (m < 0 || m > seq.horizon() || m >= static_cast<int>(stab_alpha.terms.size()) ||
      m >= static_cast<int>(stab_beta.terms.size()))
    throw std::invalid_argument("verify_stab_identity: level out of range");
  const PAdicScalar& ap = seq.ap();
  const Modulus& mod = seq.modulus();
  const u64 a = ap.value(), p = mod.p();
  auto roots = quad_roots(ap);
  QuadElem Aa = stab_alpha.terms[m].cleared(m + 2), Ab = stab_beta.terms[m].cleared(m + 2);
  // [[alpha, -beta], [-p, p]] (A_alpha, A_beta)
  Vec2<QuadElem> q{roots.alpha * Aa - roots.beta * Ab, p * (Ab - Aa)};
  Vec2<QuadElem> lhs = detail::apply_B_power(q, m + 1, a, p);
  QuadElem scale = uniformizer_elem(mod, m, a);
  for (int i = 0; i < m + 2; ++i) scale = p * scale;
  Vec2<QuadElem> rhs{scale * QuadElem::embed(seq[m], a), scale * QuadElem::embed(seq.second_row(m), a)};
  DefectReport r;
  detail::collect_defect(r, lhs.x, rhs.x, 0);
  detail::collect_defect(r, lhs.y, rhs.y, 2 * seq[m].dim());
  if (!r.ok) r.detail = "stabilization identity fails at level " + std::to_string(m);
  return r;
}

}  // namespace iwa
