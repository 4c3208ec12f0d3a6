#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "iwasawa/coleman.hpp"

using namespace iwa;

namespace {

IwasawaElem C(const Modulus& m, int lvl, i64 c) { return IwasawaElem::constant(m, lvl, c); }

IwasawaElem with_constant(const IwasawaElem& x, i64 c) {
  return x + C(x.modulus(), x.level(), c) - C(x.modulus(), x.level(), static_cast<i64>(x.constant_term()));
}

std::array<ElemPair, 2> random_seeds(const Modulus& m, int M, std::mt19937_64& rng) {
  std::array<ElemPair, 2> s;
  for (auto& e : s) e = {IwasawaElem::random(m, M, rng), IwasawaElem::random(m, M, rng)};
  return s;
}

}  // namespace

TEST(QSystem, GeneratedModelIsOk) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  std::mt19937_64 rng(11);
  auto seeds = random_seeds(m, 2, rng);
  seeds[0].x = with_constant(seeds[0].x, 1);
  seeds[0].y = with_constant(seeds[0].y, 1);
  auto model = make_model(seeds, ap);
  EXPECT_EQ(model.witnesses[0].d0, 1u);
  EXPECT_EQ(model.witnesses[0].cor_d1, 1u);
  auto r = qsystem_check(model);
  EXPECT_TRUE(r.ok) << r.violated;
  EXPECT_EQ(r.condition1, "not-applicable");
}

TEST(QSystem, ZeroWitnessViolatesConditionTwo) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 3);
  std::mt19937_64 rng(12);
  auto seeds = random_seeds(m, 2, rng);
  seeds[0].x = with_constant(seeds[0].x, 0);
  seeds[1].x = with_constant(seeds[1].x, 0);
  seeds[0].y = with_constant(seeds[0].y, 1);
  auto r = qsystem_check(make_model(seeds, ap));
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.condition2);
  EXPECT_TRUE(r.condition3);
  EXPECT_EQ(r.violated, "condition 2");
}

TEST(QSystem, BrokenRelationReportsIndex) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  std::mt19937_64 rng(13);
  auto seeds = random_seeds(m, 3, rng);
  seeds[0].x = with_constant(seeds[0].x, 1);
  seeds[0].y = with_constant(seeds[0].y, 1);
  auto model = make_model(seeds, ap);
  model.rows[2].y = model.rows[2].y + IwasawaElem::X(m, 2);
  auto r = qsystem_check(model);
  EXPECT_FALSE(r.condition4);
  ASSERT_TRUE(r.condition4_index);
  EXPECT_EQ(*r.condition4_index, 1);
  EXPECT_EQ(r.violated, "condition 4 at index 1");
}

TEST(QSystem, InconsistentWitnessesDetected) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  std::mt19937_64 rng(14);
  auto seeds = random_seeds(m, 1, rng);
  seeds[0].x = with_constant(seeds[0].x, 1);
  seeds[0].y = with_constant(seeds[0].y, 1);
  auto model = make_model(seeds, ap);
  model.witnesses[1].d0 = m.add(model.witnesses[1].d0, 1);
  auto r = qsystem_check(model);
  EXPECT_FALSE(r.witnesses_consistent);
}

TEST(ColemanSharpFlat, ModXIdentities) {
  std::mt19937_64 rng(15);
  for (i64 a : {0, 3, 6}) {
    Modulus m(3, 3);
    PAdicScalar ap(m, a);
    auto model = make_model(random_seeds(m, 3, rng), ap);
    auto cp = coleman_sharp_flat(model);
    for (int i = 0; i < 2; ++i) {
      const IwasawaElem& s = i == 0 ? cp.sharp.x : cp.sharp.y;
      const IwasawaElem& f = i == 0 ? cp.flat.x : cp.flat.y;
      const ElemPair& r0 = model.rows[0];
      const ElemPair& r1 = model.rows[1];
      u64 c0 = (i == 0 ? r0.x : r0.y).constant_term(), c1 = (i == 0 ? r1.x : r1.y).constant_term();
      EXPECT_EQ(s.constant_term(), c0);
      EXPECT_EQ(f.constant_term(), m.sub(c1, m.mul(ap.value(), c0)));
    }
  }
}

TEST(ColemanSharpFlat, ZeroModelAndOracle) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  std::array<ElemPair, 2> zero{ElemPair{IwasawaElem(m, 2), IwasawaElem(m, 2)},
                               ElemPair{IwasawaElem(m, 2), IwasawaElem(m, 2)}};
  auto cz = coleman_sharp_flat(make_model(zero, ap));
  EXPECT_TRUE(cz.sharp.x.is_zero() && cz.sharp.y.is_zero() && cz.flat.x.is_zero() && cz.flat.y.is_zero());

  std::mt19937_64 rng(16);
  auto model = make_model(random_seeds(m, 2, rng), ap);
  auto cp = coleman_sharp_flat(model);
  for (int i = 0; i < 2; ++i) {
    auto seq = model.component(i);
    auto oracle = oracle_decompose(seq);
    ASSERT_TRUE(oracle);
    ElemPair mine = i == 0 ? ElemPair{cp.sharp.x, cp.flat.x} : ElemPair{cp.sharp.y, cp.flat.y};
    EXPECT_TRUE(equal_mod_kernel(mine, *oracle, ap));
  }
}

TEST(ColemanSharpFlat, CompatibleAcrossPrecision) {
  Modulus m(3, 3);
  PAdicScalar ap(m, 3);
  std::mt19937_64 rng(17);
  auto model = make_model(random_seeds(m, 2, rng), ap);
  auto hi = coleman_sharp_flat(model);
  QSystemModel lo_model{ap.reduce_to(2), {}, {}};
  for (const auto& r : model.rows) lo_model.rows.push_back({r.x.reduce_to(2), r.y.reduce_to(2)});
  lo_model.witnesses = witnesses_from_rows(lo_model.ap, lo_model.rows);
  auto lo = coleman_sharp_flat(lo_model);
  PAdicScalar ap2 = ap.reduce_to(2);
  EXPECT_TRUE(equal_mod_kernel({hi.sharp.x.reduce_to(2), hi.flat.x.reduce_to(2)}, {lo.sharp.x, lo.flat.x}, ap2));
  EXPECT_TRUE(equal_mod_kernel({hi.sharp.y.reduce_to(2), hi.flat.y.reduce_to(2)}, {lo.sharp.y, lo.flat.y}, ap2));
}

TEST(ColemanSharpFlat, DiagonalStructureApZero) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  std::mt19937_64 rng(18);
  auto model = make_model(random_seeds(m, 2, rng), ap);
  auto cp = coleman_sharp_flat(model);
  // F_2 = -omega~^-_2 sharp and -xi F_1 = -omega~^+_2 flat on each coordinate
  IwasawaElem wm(m, 2, omega_tilde_poly(m, 2, -1)), wp(m, 2, omega_tilde_poly(m, 2, +1));
  EXPECT_EQ(model.rows[2].x, -(wm * cp.sharp.x));
  EXPECT_EQ(model.rows[2].y, -(wm * cp.sharp.y));
  EXPECT_EQ(-norm(model.rows[1].x), -(wp * cp.flat.x));
  EXPECT_EQ(-norm(model.rows[1].y), -(wp * cp.flat.y));
}

TEST(Surjectivity, SimpleRows) {
  Modulus m(3, 2);
  EXPECT_FALSE(surjectivity_check({C(m, 1, 3), IwasawaElem::X(m, 1).scaled(3)}));
  EXPECT_TRUE(surjectivity_check({C(m, 1, 1), IwasawaElem(m, 1)}));
  EXPECT_FALSE(surjectivity_check({IwasawaElem::X(m, 1), IwasawaElem(m, 1)}));
}

TEST(Surjectivity, RandomModelsWithWitnesses) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    Modulus m(3, 2);
    PAdicScalar ap(m, 3 * static_cast<i64>(trial % 3));
    auto seeds = random_seeds(m, 2, rng);
    seeds[trial % 2].x = with_constant(seeds[trial % 2].x, 1 + trial % 2);
    seeds[(trial / 2) % 2].y = with_constant(seeds[(trial / 2) % 2].y, 2);
    auto model = make_model(seeds, ap);
    ASSERT_TRUE(qsystem_check(model).ok);
    auto cp = coleman_sharp_flat(model);
    EXPECT_TRUE(surjectivity_check(cp.sharp));
    EXPECT_TRUE(surjectivity_check(cp.flat));
  }
}

TEST(KernelRankOne, ExhaustiveSmallCase) {
  // p = 3, m = 1, n = 1: Lambda has 27 elements, Lambda^2 has 729
  Modulus m(3, 1);
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 5; ++trial) {
    ElemPair f{with_constant(IwasawaElem::random(m, 1, rng), 1 + trial % 2), IwasawaElem::random(m, 1, rng)};
    if (trial % 2) std::swap(f.x, f.y);
    ASSERT_TRUE(surjectivity_check(f));
    auto shape = kernel_shape(f);
    ASSERT_TRUE(shape.free_rank_one);
    std::vector<ElemPair> kernel;
    for (u64 code = 0; code < 729; ++code) {
      u64 k = code;
      std::vector<u64> cx(3), cy(3);
      for (auto& v : cx) v = k % 3, k /= 3;
      for (auto& v : cy) v = k % 3, k /= 3;
      ElemPair e{IwasawaElem(m, 1, cx), IwasawaElem(m, 1, cy)};
      if ((f.x * e.x + f.y * e.y).is_zero()) kernel.push_back(e);
    }
    ASSERT_EQ(kernel.size(), 27u);
    // the 27 multiples of the generator are distinct kernel elements
    std::vector<ElemPair> multiples;
    for (u64 code = 0; code < 27; ++code) {
      std::vector<u64> cl = {code % 3, (code / 3) % 3, code / 9};
      IwasawaElem l(m, 1, cl);
      ElemPair e{l * shape.generator->x, l * shape.generator->y};
      EXPECT_TRUE(std::find(kernel.begin(), kernel.end(), e) != kernel.end());
      EXPECT_TRUE(std::find(multiples.begin(), multiples.end(), e) == multiples.end());
      multiples.push_back(e);
    }
    EXPECT_EQ(shape.kernel_log_size, 3);
  }
}

TEST(KernelRankOne, TrivialRows) {
  Modulus m(3, 2);
  EXPECT_FALSE(kernel_rank_one_check({IwasawaElem(m, 1), IwasawaElem(m, 1)}, 1));
  auto shape = kernel_shape({C(m, 1, 1), IwasawaElem(m, 1)});
  EXPECT_TRUE(shape.free_rank_one);
  EXPECT_TRUE(shape.generator->x.is_zero());
  EXPECT_EQ(shape.generator->y, C(m, 1, 1));
  EXPECT_FALSE(kernel_rank_one_check({C(m, 1, 3), IwasawaElem::X(m, 1)}, 1));
}

TEST(KernelRankOne, ColemanFunctionals) {
  std::mt19937_64 rng(21);
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  auto seeds = random_seeds(m, 2, rng);
  seeds[0].x = with_constant(seeds[0].x, 1);
  seeds[1].y = with_constant(seeds[1].y, 1);
  auto cp = coleman_sharp_flat(make_model(seeds, ap));
  for (int lvl = 0; lvl <= 2; ++lvl) {
    EXPECT_TRUE(kernel_rank_one_check(cp.sharp, lvl));
    EXPECT_TRUE(kernel_rank_one_check(cp.flat, lvl));
  }
}

TEST(PmIndex, Cases) {
  EXPECT_EQ(pm_index(4).plus, 4);
  EXPECT_EQ(*pm_index(4).minus, 3);
  EXPECT_EQ(pm_index(3).plus, 2);
  EXPECT_EQ(*pm_index(3).minus, 3);
  EXPECT_EQ(pm_index(1).plus, 0);
  EXPECT_FALSE(pm_index(0).minus);
  EXPECT_THROW(pm_index(-1), std::invalid_argument);
}

TEST(TraceContract, SyntheticSequence) {
  Modulus m(3, 2);
  PAdicScalar ap(m, 0);
  std::mt19937_64 rng(22);
  auto s = IwasawaElem::random(m, 4, rng);
  auto f = with_constant(IwasawaElem::random(m, 4, rng), -static_cast<i64>(s.constant_term()));
  auto seq = generate_seq(s, f, ap);
  EXPECT_FALSE(check_trace_contract(seq.terms()));
  auto bad = seq.terms();
  bad[3] = bad[3] + C(m, 3, 1);
  EXPECT_EQ(check_trace_contract(bad), std::optional<int>(3));
}

TEST(OrthogonalComplement, TrivialCases) {
  Modulus m(3, 2);
  RowMatrix P = {{1, 2, 0}, {0, 1, 0}, {5, 0, 1}};
  auto all = orthogonal_complement(m, P, {});
  EXPECT_TRUE(same_span(m, all, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3));
  auto none = orthogonal_complement(m, P, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_TRUE(same_span(m, none, {}, 3));
  EXPECT_THROW(orthogonal_complement(m, {{3, 0}, {0, 1}}, {}), ContractViolation);
}

TEST(OrthogonalComplement, DoubleComplementIsSaturation) {
  std::mt19937_64 rng(23);
  for (int n : {1, 2}) {
    Modulus m(3, n);
    const std::size_t k = 6;  // 2 p^m with p = 3, m = 1
    for (int trial = 0; trial < 10; ++trial) {
      RowMatrix P;
      do {
        P.assign(k, Row(k));
        for (auto& r : P)
          for (auto& v : r) v = m.reduce_u(rng());
      } while (!is_unimodular(m, P));
      RowMatrix S(1 + trial % 3, Row(k));
      for (auto& r : S)
        for (auto& v : r) v = m.reduce_u(rng());
      auto right = orthogonal_complement(m, P, S, Side::Right);
      for (const auto& g : S)
        for (const auto& y : right) {
          u64 acc = 0;
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) acc = m.add(acc, m.mul(m.mul(g[i], P[i][j]), y[j]));
          EXPECT_EQ(acc, 0u);
        }
      auto back = orthogonal_complement(m, P, right, Side::Left);
      EXPECT_TRUE(same_span(m, back, S, k));
    }
  }
}
