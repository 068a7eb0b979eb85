#include <gtest/gtest.h>

#include <random>

#include "so3/recoupling.hpp"

using namespace so3;
using C = CycloElem;

TEST(Recoupling, LoopValues) {
  const auto& c = make_context(5);
  const auto& R = recoupling(c);
  EXPECT_EQ(R.loop_value(0), C::one(c));
  EXPECT_EQ(R.loop_value(1), C::delta(c));
  EXPECT_EQ(R.loop_value(1), -C::qint(c, 2));
  EXPECT_THROW(R.loop_value(4), std::out_of_range);
}

TEST(Recoupling, ExhaustiveOracleP5) {
  const auto& c = make_context(5);
  const auto& R = recoupling(c);
  const int m = c.p - 2;
  for (int n = 0; n <= m; ++n) {
    EXPECT_EQ(R.loop_value(n), bracket(diagrams::unknot(n), c));
    EXPECT_EQ(R.twist(n) * R.loop_value(n), bracket(diagrams::unknot(n, 1), c));
    EXPECT_EQ(R.twist(n).conj() * R.loop_value(n), bracket(diagrams::unknot(n, -1), c));
    EXPECT_EQ(R.twist(n) * R.twist(n).conj(), C::one(c));
    for (int k = 0; k <= m; ++k) EXPECT_EQ(R.hopf(n, k), bracket(diagrams::hopf(n, k), c));
  }
  int thetas = 0, tets = 0;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b)
      for (int x = 0; x <= m; ++x) {
        if (!admissible(a, b, x, c.p)) {
          EXPECT_TRUE(R.theta(a, b, x).is_zero());
          continue;
        }
        EXPECT_EQ(R.theta(a, b, x), bracket(diagrams::theta(a, b, x), c)) << a << b << x;
        ++thetas;
        for (int d = 0; d <= m; ++d)
          for (int e = 0; e <= m; ++e)
            for (int f = 0; f <= m; ++f) {
              if (!admissible(a, e, f, c.p) || !admissible(b, d, f, c.p) || !admissible(x, d, e, c.p)) continue;
              EXPECT_EQ(R.tet(a, b, x, d, e, f), bracket(diagrams::tet(a, b, x, d, e, f), c))
                  << a << b << x << d << e << f;
              ++tets;
            }
      }
  EXPECT_GT(thetas, 10);
  EXPECT_GT(tets, 50);
}

TEST(Recoupling, SampledOracleP7) {
  const auto& c = make_context(7);
  const auto& R = recoupling(c);
  std::mt19937 rng(20240607);
  int checked = 0;
  while (checked < 50) {
    std::array<int, 6> x;
    for (auto& v : x) v = (int)(rng() % 6);
    auto [a, b, cc, d, e, f] = x;
    if (!admissible(a, b, cc, 7) || !admissible(a, e, f, 7) || !admissible(b, d, f, 7) || !admissible(cc, d, e, 7))
      continue;
    EXPECT_EQ(R.tet(a, b, cc, d, e, f), bracket(diagrams::tet(a, b, cc, d, e, f), c));
    EXPECT_EQ(R.theta(a, b, cc), bracket(diagrams::theta(a, b, cc), c));
    ++checked;
  }
}

// the fused diagram expands over the side channel with the sixj coefficients;
// as an identity of relative diagrams this needs every channel to survive
// truncation, otherwise it only holds modulo negligible elements
TEST(Recoupling, SixjAgainstRelativeEngine) {
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    const auto& R = recoupling(c);
    const int m = std::min(p - 2, 3);
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b)
        for (int cc = 0; cc <= m; ++cc)
          for (int d = 0; d <= m; ++d)
            for (int j = 0; j <= p - 2; ++j) {
              if (a + b > p - 2 || cc + d > p - 2 || a + cc > p - 2 || b + d > p - 2) continue;
              if (!admissible(a, b, j, p) || !admissible(cc, d, j, p)) continue;
              TLVector lhs = bracket_relative(diagrams::fuse_channel(a, b, cc, d, j), c);
              TLVector rhs;
              rhs.npoints = lhs.npoints;
              for (int i = 0; i <= p - 2; ++i) {
                if (!admissible(a, cc, i, p) || !admissible(b, d, i, p)) continue;
                rhs += bracket_relative(diagrams::side_channel(a, b, cc, d, i), c).scaled(R.sixj(a, b, cc, d, i, j));
              }
              EXPECT_EQ(lhs, rhs) << p << ": " << a << b << cc << d << " j=" << j;
            }
  }
}

TEST(Recoupling, SixjOrthogonality) {
  const auto& c = make_context(7);
  const auto& R = recoupling(c);
  const int m = 5;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b)
      for (int cc = 0; cc <= m; ++cc)
        for (int d = 0; d <= m; ++d) {
          std::vector<int> js, is;
          for (int x = 0; x <= m; ++x) {
            if (admissible(a, b, x, 7) && admissible(cc, d, x, 7)) js.push_back(x);
            if (admissible(a, cc, x, 7) && admissible(b, d, x, 7)) is.push_back(x);
          }
          if (js.empty() || js.size() != is.size()) continue;
          // forward: fused(j) -> side(i); backward uses the mirrored labelling
          CMatrix F = cmatrix(c, is.size(), js.size()), Bk = cmatrix(c, js.size(), is.size());
          for (size_t x = 0; x < is.size(); ++x)
            for (size_t y = 0; y < js.size(); ++y) {
              F[x][y] = R.sixj(a, b, cc, d, is[x], js[y]);
              Bk[y][x] = R.sixj(a, cc, b, d, js[y], is[x]);
            }
          EXPECT_EQ(Bk * F, identity_matrix(c, js.size())) << a << b << cc << d;
        }
}

TEST(Recoupling, HopfMatrixAndOmega) {
  for (int p : {5, 7, 11}) {
    const auto& c = make_context(p);
    const auto& R = recoupling(c);
    CMatrix S = R.hopf_matrix();
    EXPECT_EQ(S[0][0], C::one(c));
    for (int j = 0; j < c.d; ++j) EXPECT_EQ(S[0][j], R.loop_value(j));
    EXPECT_EQ(S, transpose(S));
    EXPECT_FALSE(determinant(S).is_zero());
    const auto& w = R.omega();
    C D = D_elem(c);
    for (int j = 0; j < c.d; ++j) {
      C pair = C::zero(c);
      for (int k = 0; k < c.d; ++k) pair += w[k] * S[k][j];
      EXPECT_EQ(pair, j == 0 ? D : C::zero(c));
    }
    // omega is proportional to sum_k Delta_k e_k
    for (int k = 1; k < c.d; ++k) EXPECT_EQ(w[k] * R.loop_value(0), w[0] * R.loop_value(k));
    EXPECT_EQ(R.encircle_eigenvalue(0, 2), C::one(c));
    EXPECT_EQ(R.encircle_eigenvalue(2, 0), R.loop_value(2));
  }
}
