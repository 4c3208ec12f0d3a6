#include <gtest/gtest.h>

#include <random>

#include "iwasawa/padic.hpp"

using namespace iwa;

TEST(PAdic, Valuation) {
  Modulus m(5, 3);
  EXPECT_EQ(val_p(PAdicScalar(m, 25)), 2);
  EXPECT_EQ(val_p(PAdicScalar(m, 0)), kInfiniteValuation);
  EXPECT_EQ(val_p(PAdicScalar(m, 7)), 0);
  EXPECT_EQ(val_p(PAdicScalar(m, -50)), 2);
}

TEST(PAdic, RejectsBadModulus) {
  EXPECT_THROW(Modulus(4, 2), std::invalid_argument);
  EXPECT_THROW(Modulus(2, 2), std::invalid_argument);
  EXPECT_THROW(Modulus(3, -1), std::invalid_argument);
  EXPECT_THROW(Modulus(3, 60), std::invalid_argument);
}

TEST(PAdic, InverseAndDivision) {
  Modulus m(7, 4);
  for (i64 a = 1; a < 200; ++a) {
    if (a % 7 == 0) continue;
    PAdicScalar x(m, a);
    EXPECT_EQ((x * x.inverse()).value(), 1u);
  }
  EXPECT_THROW(PAdicScalar(m, 14).inverse(), std::domain_error);
  PAdicScalar y(m, 49 * 3);
  auto q = y.divide_by_p_power(2);
  EXPECT_EQ(q.precision(), 2);
  EXPECT_EQ(q.value(), 3u);
}

TEST(PAdic, RingAxiomsAndValuationAdditivity) {
  std::mt19937_64 rng(11);
  for (u64 p : {3u, 5u, 7u}) {
    Modulus m(p, 4);
    for (int t = 0; t < 300; ++t) {
      PAdicScalar a(m, static_cast<i64>(rng() % m.value())), b(m, static_cast<i64>(rng() % m.value())),
          c(m, static_cast<i64>(rng() % m.value()));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + (b - a), b);
      int va = val_p(a), vb = val_p(b);
      if (va != kInfiniteValuation && vb != kInfiniteValuation && va + vb < 4) {
        EXPECT_EQ(val_p(a * b), va + vb);
      }
    }
  }
}

TEST(Quad, RootsVieta) {
  Modulus m(5, 4);
  for (i64 ap : {0, 5, 10, -5, 25}) {
    PAdicScalar a(m, ap);
    auto [alpha, beta] = quad_roots(a);
    EXPECT_EQ(alpha * beta, QuadScalar::embed(PAdicScalar(m, 5), a));
    EXPECT_EQ(alpha + beta, QuadScalar::embed(a, a));
    // x^2 - a x + p kills alpha
    EXPECT_TRUE((alpha * alpha - a * alpha + QuadScalar::embed(PAdicScalar(m, 5), a)).is_zero());
    auto pi = alpha - beta;
    EXPECT_EQ(pi * pi, QuadScalar::embed(a * a - PAdicScalar(m, 20), a));
    EXPECT_EQ(pi.half_valuation(), 1);
  }
}

TEST(Quad, ApZeroSquare) {
  Modulus m(5, 3);
  auto [alpha, beta] = quad_roots(PAdicScalar(m, 0));
  EXPECT_EQ(alpha * alpha, QuadScalar::embed(PAdicScalar(m, -5), PAdicScalar(m, 0)));
  EXPECT_EQ(beta, -alpha);
}

TEST(Quad, RejectsOrdinary) { EXPECT_THROW(quad_roots(PAdicScalar(Modulus(5, 3), 1)), std::invalid_argument); }

TEST(Quad, RingAxiomsAndInverse) {
  std::mt19937_64 rng(3);
  Modulus m(3, 5);
  PAdicScalar ap(m, 6);
  auto rnd = [&] {
    return QuadScalar(PAdicScalar(m, static_cast<i64>(rng() % m.value())),
                      PAdicScalar(m, static_cast<i64>(rng() % m.value())), ap);
  };
  for (int t = 0; t < 300; ++t) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (a.is_unit()) {
      EXPECT_EQ(a * a.inverse(), QuadScalar::embed(PAdicScalar(m, 1), ap));
    }
  }
}

TEST(Scaled, UniformizerInverse) {
  Modulus m(5, 4);
  PAdicScalar ap(m, 0);
  auto inv = ScaledScalar::inverse_uniformizer_power(ap, 1);
  EXPECT_EQ(inv.denom_exp(), 1);
  auto r = scaled_mul(inv, ScaledScalar::integral(uniformizer(ap)));
  EXPECT_EQ(r.denom_exp(), 0);
  EXPECT_EQ(r.body(), QuadScalar::embed(PAdicScalar(r.body().modulus(), 1), r.body().ap()));
}

TEST(Scaled, PCancels) {
  Modulus m(5, 4);
  PAdicScalar ap(m, 0);
  auto inv_p = ScaledScalar::inverse_p_power(ap, 1);
  auto r = scaled_mul(inv_p, ScaledScalar::integral(PAdicScalar(m, 5), ap));
  EXPECT_EQ(r.denom_exp(), 0);
  EXPECT_EQ(r.effective_precision(), 3);
  EXPECT_EQ(r.body().u().value(), 1u);
  EXPECT_EQ(inv_p.effective_precision(), 3);
}

TEST(Scaled, Exhaustion) {
  Modulus m(5, 3);
  PAdicScalar ap(m, 0);
  auto r = scaled_mul(ScaledScalar::inverse_p_power(ap, 2), ScaledScalar::inverse_p_power(ap, 1));
  EXPECT_EQ(r.denom_exp(), 6);
  EXPECT_TRUE(r.exhausted());
}

TEST(Scaled, AdditionAndMultiplicationConsistent) {
  std::mt19937_64 rng(5);
  Modulus m(3, 8);
  PAdicScalar ap(m, 3);
  auto denom = [&](int d) {
    // p^floor(d/2) * (alpha - beta)^(d mod 2)
    QuadScalar r = QuadScalar::embed(PAdicScalar(m, 1), ap);
    for (int i = 0; i < d / 2; ++i) r = PAdicScalar(m, 3) * r;
    if (d & 1) r = r * uniformizer(ap);
    return ScaledScalar::integral(r);
  };
  for (int t = 0; t < 200; ++t) {
    QuadScalar x(PAdicScalar(m, static_cast<i64>(rng() % 81)), PAdicScalar(m, static_cast<i64>(rng() % 81)), ap);
    int d1 = static_cast<int>(rng() % 4), d2 = static_cast<int>(rng() % 4);
    ScaledScalar a(x, d1);
    EXPECT_TRUE(a * denom(d1) == ScaledScalar::integral(x));
    auto inv = ScaledScalar::inverse_uniformizer_power(ap, d1);
    QuadScalar pik = QuadScalar::embed(PAdicScalar(m, 1), ap);
    for (int i = 0; i < d1; ++i) pik = pik * uniformizer(ap);
    EXPECT_TRUE(inv * ScaledScalar::integral(pik) == ScaledScalar::integral(QuadScalar::embed(PAdicScalar(m, 1), ap)));
    auto b = ScaledScalar(x * x, d2);
    EXPECT_TRUE((a + b) * inv == a * inv + b * inv);
    EXPECT_TRUE((a - b) + b == a);
  }
}
