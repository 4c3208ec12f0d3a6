#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "iwasawa/admissible.hpp"
#include "iwasawa/coleman.hpp"
#include "iwasawa/euler.hpp"
#include "iwasawa/logmatrix.hpp"
#include "iwasawa/theta.hpp"

namespace iwa::selftest {

/// Parameter grid of the randomized checks. The defaults are the full grid;
/// narrowing p, n or M restricts the grid but keeps the trial counts.
struct Config {
  u64 seed = 7;
  std::vector<u64> primes{3, 5};
  int max_n = 3;
  int max_M = 3;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = true;
  long trials = 0;
  std::string detail;
  double seconds = 0;
};

namespace detail {

inline std::mt19937_64 rng_for(const Config& c, int id) {
  std::seed_seq s{c.seed, static_cast<u64>(id)};
  return std::mt19937_64(s);
}

inline ElemPair random_pair(const Modulus& m, int level, std::mt19937_64& rng) {
  return {IwasawaElem::random(m, level, rng), IwasawaElem::random(m, level, rng)};
}

inline IwasawaElem with_constant(const IwasawaElem& x, u64 c) {
  const Modulus& m = x.modulus();
  return x + IwasawaElem::constant(m, x.level(), static_cast<i64>(m.reduce_u(c))) -
         IwasawaElem::constant(m, x.level(), static_cast<i64>(x.constant_term()));
}

inline u64 random_unit(const Modulus& m, std::mt19937_64& rng) {
  for (;;) {
    u64 v = m.reduce_u(rng());
    if (m.is_unit(v)) return v;
  }
}

inline u64 random_nonunit(const Modulus& m, std::mt19937_64& rng) { return m.mul(m.p(), m.reduce_u(rng())); }

/// Trials per grid point so that the total reaches `want`.
inline long per_point(long want, std::size_t points) {
  return points == 0 ? 0 : static_cast<long>((want + static_cast<long>(points) - 1) / static_cast<long>(points));
}

/// Runs body and stores the first failure message.
class Recorder {
 public:
  explicit Recorder(CheckResult& r) : r_(r) {}
  void expect(bool ok, const std::function<std::string()>& what) {
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.detail = what();
    } else if (!ok) {
      ++extra_;
    }
  }
  void finish() {
    if (extra_) r_.detail += " (+" + std::to_string(extra_) + " more failures)";
  }

 private:
  CheckResult& r_;
  long extra_ = 0;
};

inline std::string where(u64 p, int n, int M, u64 a) {
  return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " M=" + std::to_string(M) + " a_p=" + std::to_string(a);
}

template <class F>
CheckResult timed(int id, std::string name, F&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// The functional row has a unit in its last slot.
inline Functional random_functional(const Modulus& m, int M, std::size_t rank, FunctionalKind kind,
                                    std::mt19937_64& rng) {
  Functional f{kind, {}, ""};
  for (std::size_t i = 0; i < rank; ++i) f.row.push_back(IwasawaElem::random(m, M, rng));
  f.row.back() = with_constant(f.row.back(), random_unit(m, rng));
  return f;
}

inline VectorDecomposition forward_instance(const Functional& phi, const ElemPair& L, const IwasawaElem& u,
                                            const PAdicScalar& ap, std::mt19937_64& rng) {
  auto d = synthesize_decomposition(phi, {u * L.x, u * L.y}, ap, rng);
  return vector_decompose(coords_from_seeds(d.sharp, d.flat, ap));
}

/// One coefficient of x moved by a nonzero amount.
inline IwasawaElem mutate_coefficient(const IwasawaElem& x, std::mt19937_64& rng) {
  const Modulus& m = x.modulus();
  std::vector<u64> c = x.coeffs();
  const std::size_t j = rng() % c.size();
  c[j] = m.add(c[j], 1 + rng() % (m.value() - 1));
  return IwasawaElem(m, x.level(), c);
}

}  // namespace detail

// 1. decompose(generate_seq(seed)) recovers the seed mod ker H_M and agrees with the Howell oracle
inline CheckResult factorization_roundtrip(const Config& c) {
  return detail::timed(1, "factorization round-trip", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 1);
    detail::Recorder rec(r);
    std::size_t points = c.primes.size() * c.max_n * c.max_M * 2;
    long per = detail::per_point(100, points);
    for (u64 p : c.primes)
      for (int n = 1; n <= c.max_n; ++n)
        for (int M = 1; M <= c.max_M; ++M)
          for (u64 a : {u64{0}, p}) {
            Modulus mod(p, n);
            PAdicScalar ap(mod, static_cast<i64>(a));
            for (long t = 0; t < per; ++t, ++r.trials) {
              ElemPair seed = detail::random_pair(mod, M, rng);
              NormSeq seq = generate_seq(seed.x, seed.y, ap);
              auto d = decompose(seq);
              ElemPair img = apply_H(ap, M, d.as_pair());
              rec.expect(img.x == seq[M] && img.y == seq.second_row(M),
                         [&] { return "H_M(sharp, flat) misses the input at " + detail::where(p, n, M, a); });
              rec.expect(equal_mod_kernel(d.as_pair(), seed, ap) && d.kernel->contains(d.as_pair() - seed),
                         [&] { return "seed not recovered mod kernel at " + detail::where(p, n, M, a); });
              auto oracle = oracle_decompose(seq);
              rec.expect(oracle && d.kernel->contains(*oracle - d.as_pair()),
                         [&] { return "Howell oracle disagrees at " + detail::where(p, n, M, a); });
            }
          }
    rec.finish();
  });
}

// 2. the horizon M+1 decomposition projects to the horizon M class
inline CheckResult horizon_compatibility(const Config& c) {
  return detail::timed(2, "horizon compatibility", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 2);
    detail::Recorder rec(r);
    const int topM = std::max(1, c.max_M - 1);
    long per = detail::per_point(50, c.primes.size() * c.max_n * topM);
    for (u64 p : c.primes)
      for (int n = 1; n <= c.max_n; ++n)
        for (int M = 1; M <= topM; ++M) {
          Modulus mod(p, n);
          for (long t = 0; t < per; ++t, ++r.trials) {
            PAdicScalar ap(mod, static_cast<i64>(p * (rng() % 3)));
            ElemPair seed = detail::random_pair(mod, M + 1, rng);
            NormSeq seq = generate_seq(seed.x, seed.y, ap);
            auto hi = decompose(seq, false);
            auto lo = decompose(seq.truncate(M), false);
            rec.expect(equal_mod_kernel(project_to(hi.as_pair(), M), lo.as_pair(), ap),
                       [&] { return "projection leaves the level-M class at " + detail::where(p, n, M, ap.value()); });
          }
        }
    rec.finish();
  });
}

// 3. decompose-then-reduce equals reduce-then-decompose, and a_p vs a_p + p^n agree mod p^n
inline CheckResult congruence_invariance(const Config& c) {
  return detail::timed(3, "congruence invariance", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 3);
    detail::Recorder rec(r);
    const int top = std::max(2, c.max_n);
    const int topM = std::min(2, c.max_M);
    std::size_t points = 0;
    for (int hi = 2; hi <= top; ++hi) points += static_cast<std::size_t>(hi - 1) * topM * c.primes.size();
    long per = detail::per_point(50, points);
    for (u64 p : c.primes)
      for (int hi = 2; hi <= top; ++hi)
        for (int n = 1; n < hi; ++n)
          for (int M = 1; M <= topM; ++M) {
            Modulus big(p, hi), small(p, n);
            for (long t = 0; t < per; ++t, ++r.trials) {
              u64 a = p * (rng() % 3);
              PAdicScalar ap(big, static_cast<i64>(a));
              ElemPair seed = detail::random_pair(big, M, rng);
              NormSeq seq = generate_seq(seed.x, seed.y, ap);
              rec.expect(congruence_check(seq, n).ok,
                         [&] { return "reduction does not commute, n=" + std::to_string(n) + " < " + std::to_string(hi) + " at " + detail::where(p, hi, M, a); });
              PAdicScalar ap2(big, static_cast<i64>(a + small.value()));
              auto d1 = decompose(seq, false);
              auto d2 = decompose(generate_seq(seed.x, seed.y, ap2), false);
              ElemPair x{d1.sharp.reduce_to(n), d1.flat.reduce_to(n)}, y{d2.sharp.reduce_to(n), d2.flat.reduce_to(n)};
              rec.expect(equal_mod_kernel(x, y, ap.reduce_to(n)),
                         [&] { return "a_p and a_p + p^n decompositions differ at " + detail::where(p, hi, M, a); });
            }
          }
    rec.finish();
  });
}

// 4. a_p = 0: C_m ... C_1 = (-1)^{m/2} diag(omega~^-_m, omega~^+_m) for even m
inline CheckResult diagonal_law(const Config& c) {
  return detail::timed(4, "a_p = 0 diagonal law", [&](CheckResult& r) {
    detail::Recorder rec(r);
    for (u64 p : c.primes) {
      const int top = p == 3 ? 4 : 2;
      Modulus mod(p, c.max_n);
      PAdicScalar ap(mod, 0);
      for (int m = 2; m <= top; m += 2, ++r.trials) {
        ElemMat h = matrix_H(ap, m);
        u64 s = (m / 2) % 2 ? mod.reduce(-1) : 1;
        IwasawaElem minus = IwasawaElem(mod, m, omega_tilde_poly(mod, m, -1)).scaled(s);
        IwasawaElem plus = IwasawaElem(mod, m, omega_tilde_poly(mod, m, +1)).scaled(s);
        rec.expect(h.a == minus && h.d == plus && h.b.is_zero() && h.c.is_zero(), [&] {
          return "H_m is not (-1)^{m/2} diag(omega~^-, omega~^+) at p=" + std::to_string(p) + " m=" + std::to_string(m);
        });
      }
    }
    rec.finish();
  });
}

// 5. p^{m+2} (M_{m+1} - M_m) = 0 mod omega_m
inline CheckResult logmatrix_convergence(const Config& c) {
  return detail::timed(5, "log-matrix convergence", [&](CheckResult& r) {
    detail::Recorder rec(r);
    for (u64 p : c.primes)
      for (u64 k : {0, 1, 2})
        for (int m = 0; m <= c.max_M; ++m, ++r.trials) {
          const int N = c.max_n + (m + 1) + 2;
          Modulus mod(p, N);
          PAdicScalar ap(mod, static_cast<i64>(k * p));
          rec.expect(is_zero(convergence_defect(ap, m, N)), [&] {
            return "nonzero convergence defect at p=" + std::to_string(p) + " a_p=" + std::to_string(k * p) +
                   " m=" + std::to_string(m);
          });
        }
    rec.finish();
  });
}

// 6. B^{m+1} Q (L^alpha_m, L^beta_m) = (L_m, -xi L_{m-1}) and Q^{-1} M_m (sharp, flat) = (L^alpha_m, L^beta_m)
inline CheckResult stabilization_identity(const Config& c) {
  return detail::timed(6, "stabilization identity", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 6);
    detail::Recorder rec(r);
    const u64 p = 3;
    const int n = std::min(2, c.max_n), M = 2, N = n + M + 2;
    Modulus mod(p, N);
    for (u64 a : {u64{0}, p, 2 * p}) {
      PAdicScalar ap(mod, static_cast<i64>(a));
      auto roots = quad_roots(ap);
      for (int t = 0; t < 4; ++t) {
        ElemPair seed = detail::random_pair(mod, M, rng);
        NormSeq seq = generate_seq(seed.x, seed.y, ap);
        StabSeq sa = pstabilize(seq, roots.alpha, n), sb = pstabilize(seq, roots.beta, n);
        for (int m = 0; m <= M; ++m, ++r.trials) {
          auto id = verify_stab_identity(seq, sa, sb, m);
          rec.expect(id.ok, [&] { return id.detail + " (a_p=" + std::to_string(a) + ")"; });
          ElemPair sf = m == 0 ? ElemPair{seq[0], seq.second_row(0)} : decompose(seq.truncate(m), false).as_pair();
          auto lc = linear_combo_check(sf, sa, sb, m);
          rec.expect(lc.ok, [&] { return lc.detail + " (a_p=" + std::to_string(a) + ")"; });
        }
        // a corrupted stabilization must be caught
        StabSeq bad = sa;
        bad.terms[M] = ScaledQuadElem(bad.terms[M].body() + QuadElem::embed(IwasawaElem::constant(mod, M, 1), a),
                                      bad.terms[M].denom_exp());
        rec.expect(!verify_stab_identity(seq, bad, sb, M).ok, [] { return "corrupted L^alpha passed the identity"; });
      }
    }
    rec.finish();
  });
}

namespace detail {

struct ModelSample {
  QSystemModel model;
  bool killed = false;
};

/// Unit-witness models (a random basis element pairs to a unit for each
/// witness) and killed models (every witness in (p)).
inline std::vector<ModelSample> coleman_models(const Config& c, std::mt19937_64& rng) {
  std::vector<ModelSample> out;
  const u64 p = c.primes.front();
  const int M = std::min(2, c.max_M);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % std::min(2, c.max_n);
    Modulus mod(p, n);
    PAdicScalar ap(mod, static_cast<i64>(p * (rng() % 3)));
    const bool killed = t % 6 == 5;
    std::array<ElemPair, 2> seeds{random_pair(mod, M, rng), random_pair(mod, M, rng)};
    if (killed) {
      for (auto& s : seeds) {
        s.x = with_constant(s.x, random_nonunit(mod, rng));
        s.y = with_constant(s.y, random_nonunit(mod, rng));
      }
    } else {
      std::size_t i = rng() % 2, j = rng() % 2;
      seeds[i].x = with_constant(seeds[i].x, random_unit(mod, rng));
      seeds[j].y = with_constant(seeds[j].y, random_unit(mod, rng));
    }
    out.push_back({make_model(seeds, ap), killed});
  }
  return out;
}

}  // namespace detail

// 7. Col^sharp, Col^flat surjective with free rank-one kernels; killed witnesses are not surjective
inline CheckResult coleman_surjectivity(const Config& c) {
  return detail::timed(7, "Coleman surjectivity and kernel rank", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 7);
    detail::Recorder rec(r);
    long unit_models = 0;
    for (const auto& s : detail::coleman_models(c, rng)) {
      ++r.trials;
      auto q = qsystem_check(s.model);
      auto cp = coleman_sharp_flat(s.model);
      if (s.killed) {
        rec.expect(!q.condition2 && !surjectivity_check(cp.sharp) && !surjectivity_check(cp.flat),
                   [] { return "model with killed witnesses reported surjective"; });
        continue;
      }
      ++unit_models;
      rec.expect(q.ok, [&] { return "q-system check failed: " + q.violated; });
      rec.expect(surjectivity_check(cp.sharp) && surjectivity_check(cp.flat),
                 [] { return "unit-witness model not surjective"; });
      for (int m = 0; m <= s.model.horizon(); ++m)
        rec.expect(kernel_rank_one_check(cp.sharp, m) && kernel_rank_one_check(cp.flat, m),
                   [&] { return "kernel not free of rank one at m=" + std::to_string(m); });
    }
    rec.expect(unit_models >= 50, [&] { return "only " + std::to_string(unit_models) + " unit-witness models"; });
    rec.finish();
  });
}

// 8. Col^sharp = Col_0 and Col^flat = Col_1 - a_p Col_0 mod X
inline CheckResult coleman_mod_x(const Config& c) {
  return detail::timed(8, "mod-X identities", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 7);
    detail::Recorder rec(r);
    for (const auto& s : detail::coleman_models(c, rng)) {
      ++r.trials;
      const QSystemModel& q = s.model;
      const Modulus& mod = q.modulus();
      auto cp = coleman_sharp_flat(q);
      for (int i = 0; i < 2; ++i) {
        u64 c0 = (i == 0 ? q.rows[0].x : q.rows[0].y).constant_term();
        u64 c1 = (i == 0 ? q.rows[1].x : q.rows[1].y).constant_term();
        u64 sh = (i == 0 ? cp.sharp.x : cp.sharp.y).constant_term();
        u64 fl = (i == 0 ? cp.flat.x : cp.flat.y).constant_term();
        rec.expect(sh == c0, [&] { return "Col^sharp differs from Col_0 mod X on e_" + std::to_string(i + 1); });
        rec.expect(fl == mod.sub(c1, mod.mul(q.ap.value(), c0)),
                   [&] { return "Col^flat differs from Col_1 - a_p Col_0 mod X on e_" + std::to_string(i + 1); });
      }
    }
    rec.finish();
  });
}

namespace detail {

// second implementation of conditions i-iv: squares by enumeration, plain integer divisibility
inline bool rescan(u64 l, i64 a, u64 p, int n, u64 N0, i64 DK) {
  if ((p * N0) % l == 0) return false;
  if (l == 2) {
    i64 r = ((DK % 8) + 8) % 8;
    if (r != 3 && r != 5) return false;
  } else {
    const i64 L = static_cast<i64>(l);
    i64 d = ((DK % L) + L) % L;
    if (d == 0) return false;
    for (i64 y = 1; y < L; ++y)
      if (y * y % L == d) return false;
  }
  if ((l * l - 1) % p == 0) return false;
  i64 pn = 1;
  for (int i = 0; i < n; ++i) pn *= static_cast<i64>(p);
  const i64 L1 = static_cast<i64>(l) + 1;
  return (L1 - a) % pn == 0 || (L1 + a) % pn == 0;
}

}  // namespace detail

// 9. 11a1, p = 5, n = 1, K = Q(sqrt -2), l <= 200 against an independent re-scan
inline CheckResult admissible_scan(const Config&) {
  return detail::timed(9, "admissible scan", [&](CheckResult& r) {
    detail::Recorder rec(r);
    const u64 p = 5, N0 = 11, bound = 200;
    const int n = 1;
    const i64 DK = -8;
    EigenTable table = eigen_table_from_curve(curve_11a1(), N0, bound, "11a1 by naive point counting");
    auto reports = scan(table, p, n, DK, bound);
    std::vector<u64> got, want;
    for (const auto& rep : reports) got.push_back(rep.ell);
    for (const auto& [l, a] : table.entries) {
      ++r.trials;
      if (detail::rescan(l, a, p, n, N0, DK)) want.push_back(l);
    }
    rec.expect(got == want, [&] {
      return "classifier found " + std::to_string(got.size()) + " primes, re-scan " + std::to_string(want.size());
    });
    rec.expect(!got.empty(), [] { return "no admissible primes found"; });
    for (const auto& rep : reports) {
      for (int eps : rep.epsilons)
        rec.expect((static_cast<i64>(rep.ell) + 1 + eps * rep.a_ell) % 5 == 0,
                   [&] { return "epsilon does not re-verify at l=" + std::to_string(rep.ell); });
      for (int eps : {1, -1}) {
        bool listed = std::find(rep.epsilons.begin(), rep.epsilons.end(), eps) != rep.epsilons.end();
        bool holds = (static_cast<i64>(rep.ell) + 1 + eps * rep.a_ell) % 5 == 0;
        rec.expect(listed == holds, [&] { return "epsilon list incomplete at l=" + std::to_string(rep.ell); });
      }
    }
    if (r.pass) r.detail = std::to_string(got.size()) + " admissible primes <= 200";
    rec.finish();
  });
}

// 10. forward-built reciprocity instances verify; single-coefficient mutations are rejected
inline CheckResult reciprocity_checkers(const Config& c) {
  return detail::timed(10, "reciprocity checkers", [&](CheckResult& r) {
    auto rng = detail::rng_for(c, 10);
    detail::Recorder rec(r);
    const u64 p = c.primes.front();
    const int n = std::min(2, c.max_n), M = std::min(2, c.max_M);
    Modulus mod(p, n);

    struct First {
      PAdicScalar ap;
      Functional partial;
      ElemPair L;
      IwasawaElem unit;
      VectorDecomposition dec;
    };
    struct Second {
      PAdicScalar ap;
      Functional v2, v1;
      ElemPair Lh;
      GammaUnit u1, u2;
      VectorDecomposition dec1, dec2;
    };
    std::vector<First> firsts;
    std::vector<Second> seconds;
    for (int t = 0; t < 10; ++t) {
      PAdicScalar ap(mod, static_cast<i64>(p * (t % 2)));
      const std::size_t rank = 1 + t % 3;
      auto partial = detail::random_functional(mod, M, rank, FunctionalKind::Partial, rng);
      ElemPair L = detail::random_pair(mod, M, rng);
      IwasawaElem unit = t % 3 == 0   ? IwasawaElem::constant(mod, M, 1)
                         : t % 3 == 1 ? IwasawaElem::gamma(mod, M)
                                      : detail::with_constant(IwasawaElem::random(mod, M, rng), detail::random_unit(mod, rng));
      firsts.push_back({ap, partial, L, unit, detail::forward_instance(partial, L, unit, ap, rng)});

      auto v2 = detail::random_functional(mod, M, rank, FunctionalKind::V, rng);
      auto v1 = detail::random_functional(mod, M, rank, FunctionalKind::V, rng);
      ElemPair Lh = detail::random_pair(mod, M, rng);
      GammaUnit u1{detail::random_unit(mod, rng), static_cast<i64>(rng() % 9)};
      GammaUnit u2{detail::random_unit(mod, rng), -static_cast<i64>(rng() % 9)};
      auto dec1 = detail::forward_instance(v2, Lh, u1.to_elem(mod, M), ap, rng);
      auto dec2 = detail::forward_instance(v1, Lh, u2.to_elem(mod, M), ap, rng);
      seconds.push_back({ap, v2, v1, Lh, u1, u2, dec1, dec2});
    }
    for (const auto& f : firsts) {
      ++r.trials;
      auto a = first_reciprocity_check(f.dec, f.partial, f.L, f.unit);
      rec.expect(a.ok, [&] { return "forward first-law instance rejected: " + a.detail; });
      auto b = first_reciprocity_check(f.dec, f.partial, f.L);
      rec.expect(b.ok && b.unit && b.unit->is_unit(), [&] { return "unit solve failed: " + b.detail; });
    }
    for (const auto& s : seconds) {
      ++r.trials;
      auto a = second_reciprocity_check(s.dec1, s.v2, s.dec2, s.v1, s.Lh, s.u1, s.u2);
      rec.expect(a.ok, [&] { return "forward second-law instance rejected: " + a.detail; });
    }

    // mutations: L-pairs, and kappa coordinates in a slot where the functional is a unit
    int mutations = 0, redraws = 0;
    while (mutations < 100) {
      const int kind = static_cast<int>(rng() % 4);
      const std::size_t idx = rng() % firsts.size();
      bool flat_side = rng() % 2;
      bool rejected = false;
      if (kind == 0 || kind == 1) {
        const First& f = firsts[idx];
        if (kind == 0) {
          ElemPair L = f.L;
          (flat_side ? L.y : L.x) = detail::mutate_coefficient(flat_side ? L.y : L.x, rng);
          if (equal_mod_kernel(L, f.L, f.ap)) {
            ++redraws;
            continue;
          }
          rejected = !first_reciprocity_check(f.dec, f.partial, L, f.unit).ok;
        } else {
          VectorDecomposition d = f.dec;
          auto& slot = flat_side ? d.flat.back() : d.sharp.back();
          IwasawaElem before = slot;
          slot = detail::mutate_coefficient(slot, rng);
          IwasawaElem delta = slot - before, zero(mod, M);
          if (equal_mod_kernel(flat_side ? ElemPair{zero, delta} : ElemPair{delta, zero}, {zero, zero}, f.ap)) {
            ++redraws;
            continue;
          }
          rejected = !first_reciprocity_check(d, f.partial, f.L, f.unit).ok;
        }
      } else {
        const Second& s = seconds[idx];
        if (kind == 2) {
          ElemPair Lh = s.Lh;
          (flat_side ? Lh.y : Lh.x) = detail::mutate_coefficient(flat_side ? Lh.y : Lh.x, rng);
          if (equal_mod_kernel(Lh, s.Lh, s.ap)) {
            ++redraws;
            continue;
          }
          rejected = !second_reciprocity_check(s.dec1, s.v2, s.dec2, s.v1, Lh, s.u1, s.u2).ok;
        } else {
          VectorDecomposition d = s.dec2;
          auto& slot = flat_side ? d.flat.back() : d.sharp.back();
          IwasawaElem before = slot;
          slot = detail::mutate_coefficient(slot, rng);
          IwasawaElem delta = slot - before, zero(mod, M);
          if (equal_mod_kernel(flat_side ? ElemPair{zero, delta} : ElemPair{delta, zero}, {zero, zero}, s.ap)) {
            ++redraws;
            continue;
          }
          auto rep = second_reciprocity_check(s.dec1, s.v2, d, s.v1, s.Lh, s.u1, s.u2);
          rejected = !rep.ok && rep.side == "right";
        }
      }
      ++mutations;
      ++r.trials;
      rec.expect(rejected, [&] { return "mutation of kind " + std::to_string(kind) + " was accepted"; });
    }
    if (r.pass) r.detail = "100 mutations rejected (" + std::to_string(redraws) + " kernel-invisible redraws)";
    rec.finish();
  });
}

inline std::vector<CheckResult> run_all(const Config& c) {
  return {factorization_roundtrip(c), horizon_compatibility(c), congruence_invariance(c), diagonal_law(c),
          logmatrix_convergence(c),   stabilization_identity(c), coleman_surjectivity(c), coleman_mod_x(c),
          admissible_scan(c),         reciprocity_checkers(c)};
}

}  // namespace iwa::selftest
