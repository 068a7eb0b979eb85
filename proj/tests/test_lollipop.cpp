#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "so3/lollipop.hpp"

using namespace so3;

namespace {

// all boundary colorings up to order, colors in [0, p-2]
void for_each_multiset(int p, int s, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> v(s, 0);
  std::function<void(int, int)> rec = [&](int k, int lo) {
    if (k == s) return f(v);
    for (int c = lo; c <= p - 2; ++c) v[k] = c, rec(k + 1, c);
  };
  rec(0, 0);
}

}  // namespace

TEST(Lollipop, KnownCounts) {
  EXPECT_EQ(enumerate_small_colorings(canonical_tree(1, {}), 5).size(), 2u);
  EXPECT_EQ(enumerate_small_colorings(canonical_tree(2, {}), 5).size(), 5u);
  EXPECT_EQ(enumerate_small_colorings(canonical_tree(1, {}), 7).size(), 3u);
  for (int p : {5, 7, 11, 13}) {
    EXPECT_EQ(fiber_sums(canonical_tree(1, {}), p).count, (p - 1) / 2);
    EXPECT_EQ(fiber_sums(canonical_tree(2, {}), p).count, oracle::genus2_closed(p));
  }
}

TEST(Lollipop, SphereDegenerateCases) {
  EXPECT_EQ(fiber_sums(canonical_tree(0, {}), 5).count, 1);
  EXPECT_EQ(fiber_sums(canonical_tree(0, {0}), 5).count, 1);
  EXPECT_EQ(fiber_sums(canonical_tree(0, {2}), 5).count, 0);
  EXPECT_EQ(fiber_sums(canonical_tree(0, {2, 2}), 7).count, 1);
  EXPECT_EQ(fiber_sums(canonical_tree(0, {1, 2}), 7).count, 0);
}

TEST(Lollipop, TreesAreValid) {
  for (int g = 0; g <= 4; ++g)
    for (int s = 0; s <= 4; ++s) {
      std::vector<int> pts(s, 2);
      auto t = canonical_tree(g, pts);
      EXPECT_NO_THROW(t.validate()) << g << " " << s;
      if (g > 0 && s > 0) {
        EXPECT_GE(t.trunk, 0);
      }
      for (int i = 0; i < g; ++i) {
        const auto& st = t.edges[t.stick_edge[i]];
        EXPECT_TRUE(st.u == t.loop_vertex[i] || st.v == t.loop_vertex[i]);
      }
    }
}

TEST(Lollipop, CountsMatchFusionOracle) {
  for (int p : {5, 7, 11, 13})
    for (int g = 0; g <= 3; ++g)
      for (int s = 0; s <= 4; ++s)
        for_each_multiset(p, s, [&](const std::vector<int>& pts) {
          auto t = canonical_tree(g, pts);
          ASSERT_EQ(fiber_sums(t, p).count, oracle::dimension(p, g, pts))
              << "p=" << p << " g=" << g << " s=" << s;
        });
}

TEST(Lollipop, EnumerationAgreesWithFiberSums) {
  for (int p : {5, 7})
    for (int g = 0; g <= 3; ++g)
      for (int s = 0; s <= 2; ++s)
        for_each_multiset(p, s, [&](const std::vector<int>& pts) {
          auto t = canonical_tree(g, pts);
          auto cols = enumerate_small_colorings(t, p);
          auto fs = fiber_sums(t, p);
          ASSERT_EQ((long long)cols.size(), fs.count);
          long long N = 0, Ns = 0;
          std::set<std::vector<int>> seen;
          for (const auto& c : cols) {
            N += exponent_b(c);
            Ns += exponent_bsharp(c);
            EXPECT_GE(exponent_b(c), 0);
            EXPECT_GE(exponent_bsharp(c), 0);
            EXPECT_LE(c.e, c.A());
            EXPECT_EQ(exponent_bsharp(c) - exponent_b(c), sharp_shift(c));
            EXPECT_TRUE(seen.insert(c.color).second);
          }
          EXPECT_EQ(N, fs.N);
          EXPECT_EQ(Ns, fs.Nsharp);
        });
}

TEST(Lollipop, InvolutionPreservesColorings) {
  const int p = 7, d = 3;
  auto t = canonical_tree(3, {2});
  auto cols = enumerate_small_colorings(t, p);
  std::set<std::vector<int>> all;
  for (const auto& c : cols) all.insert(c.color);
  for (const auto& c : cols) {
    auto x = c.color;
    for (int i = 0; i < t.g; ++i) x[t.loop_edge[i]] = c.a[i] + (d - 1 - c.a[i] - c.b[i]);
    EXPECT_TRUE(all.count(x));
  }
}

TEST(Lollipop, ExponentExamples) {
  SmallColoring z;
  EXPECT_EQ(exponent_b(z), 0);
  EXPECT_EQ(exponent_bsharp(z), 0);
  SmallColoring c;
  c.a = {1, 1};
  c.b = {0, 0};
  EXPECT_EQ(exponent_b(c), 1);
  EXPECT_EQ(exponent_bsharp(c), 1);
  SmallColoring t;
  t.a = {0};
  t.b = {1};
  EXPECT_EQ(exponent_b(t), 1);
  EXPECT_EQ(exponent_bsharp(t), 1);
}

TEST(Lollipop, IndexIdentitySweep) {
  auto r1 = index_identity(canonical_tree(1, {}), 5);
  EXPECT_EQ(r1.N, 1);
  EXPECT_EQ(r1.Nsharp, 1);
  EXPECT_EQ(r1.rhs, 2);
  EXPECT_TRUE(r1.holds);
  auto r2 = index_identity(canonical_tree(2, {}), 5);
  EXPECT_EQ(r2.N, 5);
  EXPECT_EQ(r2.Nsharp, 5);
  EXPECT_EQ(r2.rhs, 10);
  auto r0 = index_identity(canonical_tree(0, {2, 2, 2}), 7);
  EXPECT_EQ(r0.N + r0.Nsharp + r0.rhs, 0);
  for (int p : {5, 7, 11, 13})
    for (int g = 0; g <= 3; ++g)
      for (int s = 0; s <= 4; ++s)
        for_each_multiset(p, s, [&](const std::vector<int>& pts) {
          ASSERT_TRUE(index_identity(canonical_tree(g, pts), p).holds) << p << " " << g << " " << s;
        });
}

TEST(Lollipop, Oddity) {
  const int p = 5;
  auto cols = enumerate_small_colorings(canonical_tree(2, {2}), p);
  int odd = 0;
  for (const auto& c : cols) {
    if (c.a == std::vector<int>{1, 1} && c.e == 1) {
      EXPECT_EQ(oddity(c, p), 1);
    }
    if (c.a == std::vector<int>{1, 0} && c.e == 1) {
      EXPECT_EQ(oddity(c, p), 0);
    }
    if (c.e < 1) {
      EXPECT_EQ(oddity(c, p), 0);
    }
    odd += oddity(c, p);
  }
  EXPECT_GT(odd, 0);
  for (int q : {5, 7, 11})
    for (int s = 0; s <= 2; ++s)
      for (const auto& c : enumerate_small_colorings(canonical_tree(1, std::vector<int>(s, 2)), q))
        EXPECT_EQ(oddity(c, q), 0);
  EXPECT_EQ(tensor_rescale_exponent({0, 0, 0}), 0);
  EXPECT_EQ(tensor_rescale_exponent({1, 1}), 1);
  EXPECT_EQ(tensor_rescale_exponent({1, 1, 1}), 1);
}

TEST(Lollipop, GraftingExponent) {
  EXPECT_EQ(grafting_exponent({0, 0}, {{0, 0}, {0, 0}}, 5), 1);
  // e(b) = 0 and both parts with e = d-1 and odd A - e
  EXPECT_EQ(grafting_exponent({4, 0}, {{2, 1}, {2, 1}}, 5), -1);
  // p = 7: E never negative over every combination of part data
  const int p = 7, d = 3;
  for (int A = 0; A <= 6; ++A)
    for (int e = 0; e <= std::min(A, d - 1); ++e)
      for (int A1 = 0; A1 <= 2; ++A1)
        for (int e1 = 0; e1 <= std::min(A1, d - 1); ++e1)
          for (int A2 = 0; A2 <= 2; ++A2)
            for (int e2 = 0; e2 <= std::min(A2, d - 1); ++e2)
              for (int A3 = 0; A3 <= 2; ++A3)
                for (int e3 = 0; e3 <= std::min(A3, d - 1); ++e3) {
                  if (A != A1 + A2 + A3) continue;
                  EXPECT_GE(grafting_exponent({A, e}, {{A1, e1}, {A2, e2}, {A3, e3}}, p), 0);
                }
}

TEST(Lollipop, GraftedTrees) {
  auto t = graft({canonical_tree(1, {2}), canonical_tree(2, {2})});
  EXPECT_EQ(t.g, 3);
  EXPECT_EQ(t.s(), 2);
  EXPECT_EQ(fiber_sums(t, 7).count, oracle::dimension(7, 3, {2, 2}));
  auto u = graft({canonical_tree(1, {}), canonical_tree(1, {}), canonical_tree(1, {})});
  EXPECT_EQ(fiber_sums(u, 5).count, oracle::dimension(5, 3, {}));
  EXPECT_TRUE(index_identity(u, 7).holds);
}
