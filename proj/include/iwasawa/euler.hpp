#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iwasawa/howell.hpp"
#include "iwasawa/sprung.hpp"

namespace iwa {

/// Coordinates r_{i,m} of a norm-compatible family of classes in a formal
/// basis: coords[m][i] sits at level m.
struct CoordSeq {
  PAdicScalar ap;
  std::vector<std::vector<IwasawaElem>> coords;
  bool basis_compatible = true;

  int horizon() const { return static_cast<int>(coords.size()) - 1; }
  std::size_t rank() const { return coords.empty() ? 0 : coords[0].size(); }

  NormSeq coordinate(std::size_t i, SeqMode mode = SeqMode::Lenient) const {
    std::vector<IwasawaElem> t;
    for (const auto& level : coords) t.push_back(level.at(i));
    return NormSeq(ap, std::move(t), mode);
  }

  void validate() const {
    if (coords.empty()) throw std::invalid_argument("CoordSeq: no levels");
    const std::size_t r = rank();
    if (r == 0) throw std::invalid_argument("CoordSeq: rank must be >= 1");
    for (std::size_t m = 0; m < coords.size(); ++m) {
      if (coords[m].size() != r)
        throw std::invalid_argument("CoordSeq: level " + std::to_string(m) + " has " +
                                    std::to_string(coords[m].size()) + " coordinates, expected " + std::to_string(r));
      for (const auto& x : coords[m])
        if (x.level() != static_cast<int>(m) || x.modulus() != ap.modulus())
          throw std::invalid_argument("CoordSeq: coordinate at level " + std::to_string(m) + " has the wrong ring");
    }
  }
};

/// Coordinate sequence whose i-th coordinate is generate_seq(sharp[i], flat[i]).
inline CoordSeq coords_from_seeds(const std::vector<IwasawaElem>& sharp, const std::vector<IwasawaElem>& flat,
                                  const PAdicScalar& ap) {
  if (sharp.size() != flat.size() || sharp.empty()) throw std::invalid_argument("coords_from_seeds: shape mismatch");
  const int M = sharp[0].level();
  CoordSeq out{ap, std::vector<std::vector<IwasawaElem>>(M + 1), true};
  for (std::size_t i = 0; i < sharp.size(); ++i) {
    auto seq = generate_seq(sharp[i], flat[i], ap);
    for (int m = 0; m <= M; ++m) out.coords[m].push_back(seq[m]);
  }
  return out;
}

struct VectorDecomposition {
  std::vector<IwasawaElem> sharp;
  std::vector<IwasawaElem> flat;
  int level = 0;
  PAdicScalar ap;
};

/// Coordinatewise sharp/flat decomposition with H_M (sharp_i, flat_i) = (r_{i,M}, -xi r_{i,M-1}).
inline VectorDecomposition vector_decompose(const CoordSeq& seq) {
  seq.validate();
  VectorDecomposition out{{}, {}, seq.horizon(), seq.ap};
  for (std::size_t i = 0; i < seq.rank(); ++i) {
    NormSeq c = seq.coordinate(i);
    if (auto bad = verify_norm_relation(c))
      throw ContractViolation("coordinate " + std::to_string(i) + ": norm relation fails at index " +
                              std::to_string(*bad));
    auto d = decompose(c, false);
    ElemPair img = apply_H(seq.ap, c.horizon(), d.as_pair());
    if (img.x != c[c.horizon()] || img.y != c.second_row(c.horizon()))
      throw ContractViolation("coordinate " + std::to_string(i) + ": H_M (sharp, flat) does not reproduce the input");
    out.sharp.push_back(d.sharp);
    out.flat.push_back(d.flat);
  }
  return out;
}

enum class FunctionalKind { Partial, V };

inline std::string to_string(FunctionalKind k) { return k == FunctionalKind::Partial ? "partial" : "v"; }

/// A Lambda-linear map to Lambda_n given by its row in the formal basis.
struct Functional {
  FunctionalKind kind = FunctionalKind::Partial;
  std::vector<IwasawaElem> row;
  std::string note;

  IwasawaElem apply(const std::vector<IwasawaElem>& x) const {
    if (x.size() != row.size() || x.empty()) throw std::invalid_argument("Functional::apply: rank mismatch");
    const int m = x[0].level();
    IwasawaElem acc(x[0].modulus(), m);
    for (std::size_t i = 0; i < x.size(); ++i) acc = acc + project_to(row[i], m) * x[i];
    return acc;
  }
  ElemPair apply(const VectorDecomposition& d) const { return {apply(d.sharp), apply(d.flat)}; }
};

/// c * gamma^k with c a unit of Z/p^n.
struct GammaUnit {
  u64 c = 1;
  i64 k = 0;

  IwasawaElem to_elem(const Modulus& mod, int level) const {
    if (!mod.is_unit(mod.reduce_u(c))) throw ContractViolation("GammaUnit: c = " + std::to_string(c) + " is not a unit");
    return IwasawaElem::gamma_power(mod, level, k).scaled(mod.reduce_u(c));
  }
};

struct ReciprocityReport {
  bool ok = true;
  std::optional<IwasawaElem> unit;   // the unit used (solved or supplied)
  std::vector<std::size_t> positions;  // coefficient slots of H_M(lhs - rhs) that are nonzero
  std::string side;                    // "", "left", "right" or "both"
  std::string detail;
};

namespace detail {

inline std::vector<std::size_t> kernel_defect(const ElemPair& lhs, const ElemPair& rhs, const PAdicScalar& ap) {
  const int M = lhs.x.level();
  Row r = to_row(apply_H(ap, M, lhs - rhs));
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) pos.push_back(i);
  return pos;
}

inline ElemPair scale(const IwasawaElem& u, const ElemPair& v) { return {u * v.x, u * v.y}; }

}  // namespace detail

/// Some unit u of Lambda_{M,n} with u (L#, Lb) = target mod ker H_M.
inline std::optional<IwasawaElem> solve_unit(const ElemPair& target, const ElemPair& L, const PAdicScalar& ap) {
  const int M = L.x.level();
  const Modulus& mod = ap.modulus();
  // u -> H_M(u L) = u H_M(L), as columns over the X^i basis of u
  ElemPair w = apply_H(ap, M, L);
  auto cx = multiplication_columns(w.x), cy = multiplication_columns(w.y);
  RowMatrix cols;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    Row r = cx[i];
    r.insert(r.end(), cy[i].begin(), cy[i].end());
    cols.push_back(std::move(r));
  }
  LinearSystem sys(mod, cols, 2 * L.x.dim());
  auto x = sys.solve(to_row(apply_H(ap, M, target)));
  if (!x) return std::nullopt;
  IwasawaElem u(mod, M, *x);
  if (u.is_unit()) return u;
  // any solution in u + Ann(H_M L) with a unit constant term
  for (const auto& g : sys.kernel()) {
    IwasawaElem v = u + IwasawaElem(mod, M, g);
    if (v.is_unit()) return v;
  }
  return std::nullopt;
}

/// d_l (kappa#, kappab) = unit * (L#, Lb) mod (p^n, ker H_M). Without a unit
/// the checker solves for one and requires it to be invertible.
inline ReciprocityReport first_reciprocity_check(const VectorDecomposition& dec, const Functional& partial,
                                                 const ElemPair& L, std::optional<IwasawaElem> unit = std::nullopt) {
  const PAdicScalar& ap = dec.ap;
  if (L.x.level() != dec.level) throw std::invalid_argument("first_reciprocity_check: L-pair level mismatch");
  ElemPair lhs = partial.apply(dec);
  ReciprocityReport r;
  if (unit) {
    if (!unit->is_unit()) throw ContractViolation("first_reciprocity_check: the claimed unit is not a unit");
    r.unit = project_to(*unit, dec.level);
  } else {
    r.unit = solve_unit(lhs, L, ap);
    if (!r.unit) {
      r.ok = false;
      r.side = "left";
      r.detail = "no unit u with d_l(kappa) = u L modulo the kernel";
      return r;
    }
  }
  r.positions = detail::kernel_defect(lhs, detail::scale(*r.unit, L), ap);
  r.ok = r.positions.empty();
  if (!r.ok) {
    r.side = "left";
    r.detail = "first reciprocity law fails at " + std::to_string(r.positions.size()) + " coefficient slots";
  }
  return r;
}

/// v_{l2}(kappa(l1)) = u1 L_h and v_{l1}(kappa(l2)) = u2 L_h mod (p^n, ker H_M),
/// with u_i of the form c gamma^k.
inline ReciprocityReport second_reciprocity_check(const VectorDecomposition& dec1, const Functional& v_l2,
                                                  const VectorDecomposition& dec2, const Functional& v_l1,
                                                  const ElemPair& L_h, const GammaUnit& u1, const GammaUnit& u2) {
  const PAdicScalar& ap = dec1.ap;
  const int M = dec1.level;
  if (dec2.level != M || L_h.x.level() != M) throw std::invalid_argument("second_reciprocity_check: level mismatch");
  const Modulus& mod = ap.modulus();
  IwasawaElem e1 = u1.to_elem(mod, M), e2 = u2.to_elem(mod, M);
  ReciprocityReport r;
  auto left = detail::kernel_defect(v_l2.apply(dec1), detail::scale(e1, L_h), ap);
  auto right = detail::kernel_defect(v_l1.apply(dec2), detail::scale(e2, L_h), ap);
  r.positions = left;
  const std::size_t off = 2 * L_h.x.dim();
  for (auto i : right) r.positions.push_back(off + i);
  r.ok = left.empty() && right.empty();
  if (!left.empty() && !right.empty())
    r.side = "both";
  else if (!left.empty())
    r.side = "left";
  else if (!right.empty())
    r.side = "right";
  if (!r.ok) r.detail = "second reciprocity law fails on the " + r.side + " side";
  return r;
}

/// Sharp/flat coordinates with phi(kappa#) = target#, phi(kappab) = targetb:
/// random in every slot but the first one where phi has a unit entry, which
/// is then solved for.
inline VectorDecomposition synthesize_decomposition(const Functional& phi, const ElemPair& target, const PAdicScalar& ap,
                                                    std::mt19937_64& rng) {
  const int M = target.x.level();
  const Modulus& mod = ap.modulus();
  std::size_t pivot = phi.row.size();
  for (std::size_t i = 0; i < phi.row.size(); ++i)
    if (project_to(phi.row[i], M).is_unit()) {
      pivot = i;
      break;
    }
  if (pivot == phi.row.size()) throw ContractViolation("synthesize_decomposition: functional has no unit entry");
  VectorDecomposition d{std::vector<IwasawaElem>(phi.row.size()), std::vector<IwasawaElem>(phi.row.size()), M, ap};
  IwasawaElem rs = target.x, rf = target.y;
  for (std::size_t i = 0; i < phi.row.size(); ++i) {
    if (i == pivot) continue;
    d.sharp[i] = IwasawaElem::random(mod, M, rng);
    d.flat[i] = IwasawaElem::random(mod, M, rng);
    IwasawaElem c = project_to(phi.row[i], M);
    rs = rs - c * d.sharp[i];
    rf = rf - c * d.flat[i];
  }
  IwasawaElem inv = project_to(phi.row[pivot], M).inverse();
  d.sharp[pivot] = inv * rs;
  d.flat[pivot] = inv * rf;
  return d;
}

}  // namespace iwa
