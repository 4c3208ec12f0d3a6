#include <gtest/gtest.h>

#include "iwasawa/admissible.hpp"

using namespace iwa;

namespace {

// independent re-evaluation of conditions i-iv with plain integer arithmetic
bool rescan_admissible(u64 l, i64 a, u64 p, int n, u64 N0, i64 DK) {
  if ((p * N0) % l == 0) return false;
  // inert: D_K is not a square mod l and l does not divide D_K (l = 2 handled by the mod 8 rule)
  if (l == 2) {
    if (DK % 2 == 0) return false;
    i64 r = ((DK % 8) + 8) % 8;
    if (r != 3 && r != 5) return false;
  } else {
    i64 d = ((DK % static_cast<i64>(l)) + static_cast<i64>(l)) % static_cast<i64>(l);
    if (d == 0) return false;
    for (u64 y = 1; y < l; ++y)
      if (static_cast<i64>(y * y % l) == d) return false;
  }
  if ((l * l - 1) % p == 0) return false;
  i64 pn = 1;
  for (int i = 0; i < n; ++i) pn *= static_cast<i64>(p);
  i64 plus = static_cast<i64>(l) + 1 + a, minus = static_cast<i64>(l) + 1 - a;
  return plus % pn == 0 || minus % pn == 0;
}

}  // namespace

TEST(Kronecker, SmallValues) {
  EXPECT_EQ(kronecker(-8, 2), 0);
  EXPECT_EQ(kronecker(-8, 3), 1);   // -8 = 1 mod 3
  EXPECT_EQ(kronecker(-8, 5), -1);  // -8 = 2 mod 5
  EXPECT_EQ(kronecker(-8, 7), -1);
  EXPECT_EQ(kronecker(-8, 11), 1);  // 3 = 5^2 mod 11
  EXPECT_EQ(kronecker(-7, 2), 1);
  EXPECT_EQ(kronecker(-3, 2), -1);
}

TEST(PointCounting, Curve11a1) {
  const std::map<u64, i64> known = {{2, -2}, {3, -1}, {5, 1},  {7, -2}, {11, 1},  {13, 4},  {17, -2},
                                    {19, 0}, {23, -1}, {29, 0}, {31, 7}, {37, 3},  {41, -8}, {43, -6},
                                    {47, 8}, {53, -6}, {59, 5}, {61, 12}, {67, -7}, {71, -3}, {97, -7}};
  for (auto [l, a] : known) EXPECT_EQ(naive_ap(curve_11a1(), l), a) << "l = " << l;
}

TEST(EigenTable, WeilBound) {
  EigenTable t{11, {{2, -2}, {3, 4}}, ""};
  EXPECT_THROW(t.validate(), SchemaError);
  t.entries[3] = -1;
  EXPECT_NO_THROW(t.validate());
  t.entries[4] = 0;
  EXPECT_THROW(t.validate(), SchemaError);
  for (u64 l = 2; l < 200; ++l)
    if (is_prime(l)) {
      EXPECT_LE(naive_ap(curve_11a1(), l) * naive_ap(curve_11a1(), l), static_cast<i64>(4 * l));
    }
}

TEST(IsAdmissible, Conditions) {
  auto r = is_admissible(5, 1, 5, 1, 11, -8);
  EXPECT_FALSE(r.checks[0]);
  r = is_admissible(11, 1, 5, 1, 11, -8);
  EXPECT_FALSE(r.checks[0]);
  r = is_admissible(3, -1, 5, 1, 11, -8);  // (-8|3) = +1
  EXPECT_FALSE(r.checks[1]);
  r = is_admissible(19, 0, 5, 1, 11, -8);  // 19 = -1 mod 5
  EXPECT_FALSE(r.checks[2]);
  EXPECT_THROW(is_admissible(15, 0, 5, 1, 11, -8), std::invalid_argument);
  EXPECT_THROW(is_admissible(7, 0, 5, 1, 11, -10), std::invalid_argument);
}

TEST(IsAdmissible, Ell13On11a1) {
  const i64 a13 = naive_ap(curve_11a1(), 13);
  auto r = is_admissible(13, a13, 5, 1, 11, -8);
  EXPECT_EQ(r.admissible(), rescan_admissible(13, a13, 5, 1, 11, -8));
  // (-8|13) = -1, 13^2 - 1 = 168 prime to 5, 13 + 1 + 4 = 18, 13 + 1 - 4 = 10
  EXPECT_TRUE(r.admissible());
  EXPECT_EQ(r.epsilons, std::vector<int>{-1});
}

TEST(IsAdmissible, BothSignsWhenApVanishes) {
  // a_l = 0 mod p^n and p^n | l + 1
  auto r = is_admissible(29, 0, 5, 1, 11, -8);
  EXPECT_EQ(r.epsilons, (std::vector<int>{1, -1}));
}

TEST(Scan, MatchesRescan) {
  const auto table = eigen_table_from_curve(curve_11a1(), 11, 200);
  for (int n : {1, 2}) {
    auto reports = scan(table, 5, n, -8, 200);
    std::vector<u64> got, want;
    for (const auto& r : reports) got.push_back(r.ell);
    for (const auto& [l, a] : table.entries)
      if (rescan_admissible(l, a, 5, n, 11, -8)) want.push_back(l);
    EXPECT_EQ(got, want);
    for (const auto& r : reports)
      for (int eps : r.epsilons) EXPECT_EQ((static_cast<i64>(r.ell) + 1 + eps * r.a_ell) % (n == 1 ? 5 : 25), 0);
  }
}

TEST(Scan, PrefixStableAndGaps) {
  const auto table = eigen_table_from_curve(curve_11a1(), 11, 200);
  auto full = scan(table, 5, 1, -8, 200);
  auto part = scan(table, 5, 1, -8, 100);
  ASSERT_LE(part.size(), full.size());
  for (std::size_t i = 0; i < part.size(); ++i) EXPECT_EQ(part[i].ell, full[i].ell);
  EXPECT_TRUE(scan(EigenTable{11, {}, ""}, 5, 1, -8, 1).empty());
  auto holed = table;
  holed.entries.erase(37);
  try {
    scan(holed, 5, 1, -8, 200);
    FAIL() << "expected a gap error";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("37"), std::string::npos);
  }
  for (const auto& r : full) {
    u64 res = r.ell % 5;
    EXPECT_TRUE(res != 1 && res != 4);
  }
}

TEST(Frobenius, EigenvaluesAreCharpolyRoots) {
  const auto table = eigen_table_from_curve(curve_11a1(), 11, 200);
  for (int n : {1, 2}) {
    Modulus mod(5, n);
    for (const auto& r : scan(table, 5, n, -8, 200))
      for (int eps : r.epsilons) {
        auto e = frobenius_eigs(r.ell, eps, 5, n);
        EXPECT_NE(e.unit_root % 5, e.ell_root % 5);
        for (u64 x : {e.unit_root, e.ell_root}) {
          u64 val = mod.add(mod.sub(mod.mul(x, x), mod.mul(mod.reduce(r.a_ell), x)), mod.reduce_u(r.ell));
          EXPECT_EQ(val, 0u) << "l = " << r.ell;
        }
        EXPECT_EQ(e.ell_squared, mod.mul(mod.reduce_u(r.ell), mod.reduce_u(r.ell)));
      }
  }
  // eps = -1 means l + 1 = a_l: roots 1 and l
  auto e = frobenius_eigs(13, -1, 5, 1);
  EXPECT_EQ(e.unit_root, 1u);
  EXPECT_EQ(e.ell_root, 3u);
  EXPECT_THROW(frobenius_eigs(11, 1, 5, 1), ContractViolation);
}
