#include <gtest/gtest.h>

#include <random>
#include <set>

#include "iwasawa/howell.hpp"

using namespace iwa;

namespace {

/// All vectors of (Z/p^n)^k, enumerated.
std::vector<Row> all_vectors(const Modulus& m, std::size_t k) {
  std::vector<Row> out;
  Row v(k, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < k && ++v[i] == m.value()) v[i++] = 0;
    if (i == k) break;
  }
  return out;
}

Row combine(const Modulus& m, const RowMatrix& rows, const Row& coef) {
  Row r(rows.empty() ? 0 : rows[0].size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < r.size(); ++c) r[c] = m.add(r[c], m.mul(coef[i], rows[i][c]));
  return r;
}

/// Span by brute force.
std::set<Row> brute_span(const Modulus& m, const RowMatrix& rows, std::size_t cols) {
  std::set<Row> s;
  for (const auto& c : all_vectors(m, rows.size())) s.insert(rows.empty() ? Row(cols, 0) : combine(m, rows, c));
  if (rows.empty()) s.insert(Row(cols, 0));
  return s;
}

RowMatrix random_matrix(std::mt19937_64& rng, const Modulus& m, std::size_t r, std::size_t c, bool sparse_p) {
  RowMatrix a(r, Row(c));
  for (auto& row : a)
    for (auto& x : row) {
      x = rng() % m.value();
      if (sparse_p && rng() % 2) x = m.mul(x, m.p());
    }
  return a;
}

}  // namespace

TEST(Howell, SpanMatchesBruteForce) {
  std::mt19937_64 rng(9);
  for (auto [p, n] : {std::pair<u64, int>{3, 2}, {3, 1}, {5, 1}, {2 + 1, 3}}) {
    Modulus m(p, n);
    for (int t = 0; t < 25; ++t) {
      std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
      auto a = random_matrix(rng, m, r, c, true);
      HowellForm hf(m, a, c);
      auto span = brute_span(m, a, c);
      EXPECT_EQ(static_cast<std::size_t>(std::llround(std::pow(double(p), double(hf.log_size())))), span.size());
      for (const auto& v : all_vectors(m, c)) EXPECT_EQ(hf.contains(v), span.count(v) > 0);
    }
  }
}

TEST(Howell, HowellPropertyOnLeadingZeros) {
  // [p, 1] over Z/p^2: the row p*[p,1] = [0,p] must be visible in the form
  Modulus m(3, 2);
  HowellForm hf(m, {{3, 1}}, 2);
  EXPECT_TRUE(hf.contains({0, 3}));
  bool has_zero_lead = false;
  for (const auto& r : hf.rows()) has_zero_lead |= (r[0] == 0 && r[1] != 0);
  EXPECT_TRUE(has_zero_lead);
}

TEST(LinearSystem, KernelAndSolveMatchBruteForce) {
  std::mt19937_64 rng(21);
  for (auto [p, n] : {std::pair<u64, int>{3, 2}, {3, 1}, {5, 1}}) {
    Modulus m(p, n);
    for (int t = 0; t < 20; ++t) {
      std::size_t in = 1 + rng() % 3, out = 1 + rng() % 3;
      auto cols = random_matrix(rng, m, in, out, true);
      LinearSystem sys(m, cols, out);
      std::set<Row> ker, img;
      for (const auto& x : all_vectors(m, in)) {
        Row y = sys.apply(x, cols);
        img.insert(y);
        if (std::all_of(y.begin(), y.end(), [](u64 v) { return v == 0; })) ker.insert(x);
      }
      HowellForm kf(m, sys.kernel(), in);
      for (const auto& x : all_vectors(m, in)) EXPECT_EQ(kf.contains(x), ker.count(x) > 0);
      EXPECT_EQ(static_cast<std::size_t>(std::llround(std::pow(double(p), double(sys.kernel_log_size())))), ker.size());
      for (const auto& b : all_vectors(m, out)) {
        auto x = sys.solve(b);
        EXPECT_EQ(x.has_value(), img.count(b) > 0);
        if (x) {
          EXPECT_EQ(sys.apply(*x, cols), b);
        }
        EXPECT_EQ(sys.image().contains(b), img.count(b) > 0);
      }
    }
  }
}
