#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "iwasawa/error.hpp"
#include "iwasawa/howell.hpp"
#include "iwasawa/lambda.hpp"
#include "iwasawa/mat2.hpp"

namespace iwa {

using ElemPair = Vec2<IwasawaElem>;
using ElemMat = Mat2<IwasawaElem>;

inline void require_nonordinary(const PAdicScalar& ap) {
  if (val_p(ap) < 1) throw std::invalid_argument("a_p must be divisible by p");
}

inline ElemPair zero_pair(const Modulus& mod, int level) {
  return {IwasawaElem(mod, level), IwasawaElem(mod, level)};
}

inline ElemPair project_to(const ElemPair& v, int level) { return {project_to(v.x, level), project_to(v.y, level)}; }

inline ElemMat identity_mat(const Modulus& mod, int level) {
  return {IwasawaElem::constant(mod, level, 1), IwasawaElem(mod, level), IwasawaElem(mod, level),
          IwasawaElem::constant(mod, level, 1)};
}

/// [[a_p, 1], [-p, 0]]
inline ElemMat mat_B(const PAdicScalar& ap, int level = 0) {
  require_nonordinary(ap);
  const Modulus& mod = ap.modulus();
  return {IwasawaElem::constant(mod, level, static_cast<i64>(ap.value())), IwasawaElem::constant(mod, level, 1),
          IwasawaElem::constant(mod, level, -static_cast<i64>(mod.p())), IwasawaElem(mod, level)};
}

/// [[a_p, 1], [-Phi_m, 0]] viewed at `level` (defaults to m).
inline ElemMat mat_C(const PAdicScalar& ap, int m, int level = -1) {
  require_nonordinary(ap);
  if (m < 1) throw std::invalid_argument("mat_C: m must be >= 1");
  if (level < 0) level = m;
  const Modulus& mod = ap.modulus();
  return {IwasawaElem::constant(mod, level, static_cast<i64>(ap.value())), IwasawaElem::constant(mod, level, 1),
          -IwasawaElem(mod, level, phi_cached(mod, m)), IwasawaElem(mod, level)};
}

/// [[0, -1], [Phi_m, a_p]], so that C_m * C'_m = Phi_m * Id.
inline ElemMat adjugate_C(const PAdicScalar& ap, int m, int level = -1) {
  return mat_C(ap, m, level).adj();
}

/// C_m ... C_1 at level m; the identity for m = 0.
inline ElemMat matrix_H(const PAdicScalar& ap, int m) {
  require_nonordinary(ap);
  ElemMat h = identity_mat(ap.modulus(), m);
  for (int j = 1; j <= m; ++j) h = mat_C(ap, j, m) * h;
  return h;
}

/// C_m ... C_1 v, applying C_1 first.
inline ElemPair apply_H(const PAdicScalar& ap, int m, const ElemPair& v) {
  require_nonordinary(ap);
  if (v.x.level() != m || v.y.level() != m) throw std::invalid_argument("apply_H: components must sit at level m");
  ElemPair w = v;
  for (int j = 1; j <= m; ++j) w = mat_C(ap, j, m).apply(w);
  return w;
}

// --- coordinates ---------------------------------------------------------

inline Row to_row(const ElemPair& v) {
  Row r = v.x.coeffs();
  auto y = v.y.coeffs();
  r.insert(r.end(), y.begin(), y.end());
  return r;
}

inline ElemPair pair_from_row(const Modulus& mod, int level, const Row& r) {
  std::size_t d = level_degree(mod.p(), level);
  if (r.size() != 2 * d) throw std::invalid_argument("pair_from_row: wrong length");
  return {IwasawaElem(mod, level, Row(r.begin(), r.begin() + d)), IwasawaElem(mod, level, Row(r.begin() + d, r.end()))};
}

/// Columns x * X^i for i < p^m, each as a dense coefficient vector.
inline RowMatrix multiplication_columns(const IwasawaElem& h) {
  const Modulus& mod = h.modulus();
  const ZpPoly& om = omega_cached(mod, h.level());
  const std::size_t d = h.dim();
  RowMatrix cols;
  cols.reserve(d);
  Row cur = h.coeffs();
  for (std::size_t i = 0; i < d; ++i) {
    cols.push_back(cur);
    // multiply by X and reduce by the monic omega_m
    u64 top = cur[d - 1];
    for (std::size_t k = d - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (top)
      for (std::size_t k = 0; k < d; ++k) cur[k] = mod.sub(cur[k], mod.mul(top, om.coeff(k)));
  }
  return cols;
}

/// Columns of a 2x2 matrix over Lambda_{m,n} acting on Lambda_{m,n}^2.
inline RowMatrix matrix_columns(const ElemMat& h) {
  auto ca = multiplication_columns(h.a), cb = multiplication_columns(h.b);
  auto cc = multiplication_columns(h.c), cd = multiplication_columns(h.d);
  RowMatrix cols;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    Row r = ca[i];
    r.insert(r.end(), cc[i].begin(), cc[i].end());
    cols.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < cb.size(); ++i) {
    Row r = cb[i];
    r.insert(r.end(), cd[i].begin(), cd[i].end());
    cols.push_back(std::move(r));
  }
  return cols;
}

// --- kernel of H ---------------------------------------------------------

/// ker H_m on Lambda_{m,n}^2 with a solver for H_m x = b.
class SprungKernel {
 public:
  SprungKernel(const PAdicScalar& ap, int m) : ap_(ap), level_(m) {
    auto cols = matrix_columns(matrix_H(ap, m));
    sys_ = std::make_shared<LinearSystem>(ap.modulus(), cols, 2 * level_degree(ap.p(), m));
    for (const auto& r : sys_->kernel()) gens_.push_back(pair_from_row(ap.modulus(), m, r));
  }

  int level() const { return level_; }
  const PAdicScalar& ap() const { return ap_; }
  const std::vector<ElemPair>& generators() const { return gens_; }
  /// log_p of the kernel's cardinality.
  long log_size() const { return sys_->kernel_log_size(); }
  /// Number of Howell generators.
  std::size_t rank() const { return gens_.size(); }

  bool contains(const ElemPair& v) const {
    HowellForm hf(ap_.modulus(), sys_->kernel(), sys_->in_dim());
    return hf.contains(to_row(v));
  }
  std::optional<ElemPair> solve(const ElemPair& rhs) const {
    auto x = sys_->solve(to_row(rhs));
    if (!x) return std::nullopt;
    return pair_from_row(ap_.modulus(), level_, *x);
  }

 private:
  PAdicScalar ap_;
  int level_;
  std::shared_ptr<LinearSystem> sys_;
  std::vector<ElemPair> gens_;
};

/// Memoized kernel per (p, n, a_p, m).
inline std::shared_ptr<const SprungKernel> kernel_H(const PAdicScalar& ap, int m) {
  static std::mutex mu;
  static std::map<std::tuple<u64, int, u64, int>, std::shared_ptr<const SprungKernel>> cache;
  auto key = std::make_tuple(ap.p(), ap.precision(), ap.value(), m);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto k = std::make_shared<const SprungKernel>(ap, m);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, k).first->second;
}

// --- norm-compatible sequences ---------------------------------------------

enum class SeqMode { Strict, Lenient };

/// (F_0, ..., F_M) with F_m at level m.
class NormSeq;
inline std::optional<int> verify_norm_relation(const NormSeq& seq);

class NormSeq {
 public:
  NormSeq(const PAdicScalar& ap, std::vector<IwasawaElem> terms, SeqMode mode = SeqMode::Strict)
      : ap_(ap), terms_(std::move(terms)) {
    require_nonordinary(ap);
    if (terms_.empty()) throw std::invalid_argument("NormSeq: empty sequence");
    for (std::size_t m = 0; m < terms_.size(); ++m) {
      if (terms_[m].level() != static_cast<int>(m))
        throw std::invalid_argument("NormSeq: term " + std::to_string(m) + " is not at level " + std::to_string(m));
      if (terms_[m].modulus() != ap.modulus())
        throw std::invalid_argument("NormSeq: term " + std::to_string(m) + " has the wrong precision");
    }
    if (mode == SeqMode::Strict) {
      if (auto bad = verify_norm_relation(*this))
        throw ContractViolation("norm relation fails at index " + std::to_string(*bad));
    }
  }

  const PAdicScalar& ap() const { return ap_; }
  const Modulus& modulus() const { return ap_.modulus(); }
  int precision() const { return ap_.precision(); }
  u64 p() const { return ap_.p(); }
  int horizon() const { return static_cast<int>(terms_.size()) - 1; }
  const std::vector<IwasawaElem>& terms() const { return terms_; }
  const IwasawaElem& operator[](std::size_t m) const { return terms_.at(m); }

  NormSeq reduce_to(int n, SeqMode mode = SeqMode::Lenient) const {
    std::vector<IwasawaElem> t;
    for (const auto& x : terms_) t.push_back(x.reduce_to(n));
    return NormSeq(ap_.reduce_to(n), std::move(t), mode);
  }
  NormSeq truncate(int M, SeqMode mode = SeqMode::Lenient) const {
    if (M > horizon()) throw std::invalid_argument("NormSeq::truncate: horizon too large");
    return NormSeq(ap_, std::vector<IwasawaElem>(terms_.begin(), terms_.begin() + M + 1), mode);
  }

  /// -xi(F_{m-1}) as an element of level m; for m = 0 this is pi(F_1) - a_p F_0.
  IwasawaElem second_row(int m) const {
    if (m >= 1) return -norm(terms_[m - 1]);
    if (horizon() < 1) throw std::invalid_argument("second_row(0) needs F_1");
    return project(terms_[1]) - terms_[0].scaled(ap_);
  }

 private:
  PAdicScalar ap_;
  std::vector<IwasawaElem> terms_;
};

/// First m in [1, M-1] with pi(F_{m+1}) != a_p F_m - xi(F_{m-1}).
inline std::optional<int> verify_norm_relation(const NormSeq& seq) {
  const auto& f = seq.terms();
  for (int m = 1; m + 1 <= seq.horizon(); ++m) {
    if (project(f[m + 1]) != f[m].scaled(seq.ap()) - norm(f[m - 1])) return m;
  }
  return std::nullopt;
}

// --- factorization ---------------------------------------------------------

struct SharpFlatPair {
  IwasawaElem sharp;
  IwasawaElem flat;
  int level = 0;
  std::shared_ptr<const SprungKernel> kernel;  // null when not requested

  ElemPair as_pair() const { return {sharp, flat}; }
};

/// Sharp/flat pair at level M with H_M (sharp, flat) = (F_M, -xi F_{M-1}).
///
/// Works at the precision of the sequence: the divisibility by Phi_1...Phi_M
/// is exact over Z/p^n, while a lift to higher precision would not keep it.
inline SharpFlatPair decompose(const NormSeq& seq, bool with_kernel = true) {
  const int M = seq.horizon();
  if (M < 1) throw std::invalid_argument("decompose: horizon must be >= 1");
  if (auto bad = verify_norm_relation(seq))
    throw ContractViolation("decompose: norm relation fails at index " + std::to_string(*bad));
  const Modulus& mod = seq.modulus();
  const u64 a = seq.ap().value();

  ZpPoly x = seq[M].poly();
  ZpPoly y = -(phi_cached(mod, M) * seq[M - 1].poly());
  for (int j = M; j >= 1; --j) {
    // C'_j = [[0, -1], [Phi_j, a]]
    ZpPoly nx = -y;
    ZpPoly ny = phi_cached(mod, j) * x + y.scaled(a);
    x = std::move(nx);
    y = std::move(ny);
  }
  ZpPoly P = phi_product(mod, M);
  auto qx = monic_divide(x, P), qy = monic_divide(y, P);
  if (!qx.exact || !qy.exact)
    throw ContractViolation("decompose: divisibility by Phi_1...Phi_M failed (corrupted input or precision mismatch)");

  SharpFlatPair out{IwasawaElem(mod, M, qx.quotient), IwasawaElem(mod, M, qy.quotient), M, nullptr};
  ElemPair img = apply_H(seq.ap(), M, out.as_pair());
  if (img.x != seq[M] || img.y != seq.second_row(M))
    throw ContractViolation("decompose: H_M(sharp, flat) does not reproduce the sequence");
  if (with_kernel) out.kernel = kernel_H(seq.ap(), M);
  return out;
}

/// F_m := first component of H_m (pi_m sharp, pi_m flat) for m = 0..M.
inline NormSeq generate_seq(const IwasawaElem& sharp, const IwasawaElem& flat, const PAdicScalar& ap) {
  if (sharp.level() != flat.level()) throw std::invalid_argument("generate_seq: level mismatch");
  const int M = sharp.level();
  std::vector<IwasawaElem> terms;
  for (int m = 0; m <= M; ++m) terms.push_back(apply_H(ap, m, {project_to(sharp, m), project_to(flat, m)}).x);
  return NormSeq(ap, std::move(terms), SeqMode::Lenient);
}

/// Independent route: solve H_M x = (F_M, -xi F_{M-1}) by Howell elimination.
inline std::optional<ElemPair> oracle_decompose(const NormSeq& seq) {
  const int M = seq.horizon();
  return kernel_H(seq.ap(), M)->solve({seq[M], seq.second_row(M)});
}

/// u == v modulo ker H_m, tested as H_m u == H_m v.
inline bool equal_mod_kernel(const ElemPair& u, const ElemPair& v, const PAdicScalar& ap) {
  const int m = u.x.level();
  ElemPair d = apply_H(ap, m, u - v);
  return d.x.is_zero() && d.y.is_zero();
}

struct CongruenceReport {
  bool ok = true;
  std::vector<std::size_t> positions;  // coordinates of H(difference) that are nonzero
};

/// decompose-then-reduce against reduce-then-decompose, modulo (p^n, ker H).
inline CongruenceReport congruence_check(const NormSeq& seq, int n) {
  if (n > seq.precision() || n < 1) throw std::invalid_argument("congruence_check: need 1 <= n <= n'");
  const int M = seq.horizon();
  auto hi = decompose(seq, false);
  ElemPair a{hi.sharp.reduce_to(n), hi.flat.reduce_to(n)};
  auto lo = decompose(seq.reduce_to(n), false);
  ElemPair diff = apply_H(seq.ap().reduce_to(n), M, a - lo.as_pair());
  CongruenceReport r;
  Row row = to_row(diff);
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) r.positions.push_back(i);
  r.ok = r.positions.empty();
  return r;
}

}  // namespace iwa
