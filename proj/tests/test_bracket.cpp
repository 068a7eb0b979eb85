#include <gtest/gtest.h>

#include "so3/bracket.hpp"

using namespace so3;
using C = CycloElem;

namespace {

ColoredDiagram unknot(int color, int twists = 0) {
  MorseBuilder b;
  b.cup(0, color);
  if (twists) b.twist(0, twists);
  b.cap(0);
  return b.build();
}

ColoredDiagram hopf(int c1, int c2, bool positive = true) {
  MorseBuilder b;
  b.cup(0, c1).cup(2, c2).cross(1, positive).cross(1, positive).cap(0).cap(0);
  return b.build();
}

C Delta(const PrimeContext& c, int n) { return (n % 2 ? -1L : 1L) * C::qint(c, n + 1); }

}  // namespace

TEST(Bracket, EmptyAndUnknot) {
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    EXPECT_EQ(bracket(ColoredDiagram{}, c), C::one(c));
    EXPECT_EQ(bracket(unknot(1), c), -C::zeta_p(c, 1) - C::zeta_p(c, -1));
    for (int n = 0; n <= p - 2; ++n) EXPECT_EQ(bracket(unknot(n), c), Delta(c, n)) << p << " " << n;
  }
}

TEST(Bracket, FramingCurls) {
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    for (int n = 1; n <= p - 2; ++n)
      for (int k : {1, -1, 2}) {
        C mu = C::A_pow(c, (long)k * n * (n + 2)) * ((k * n) % 2 ? -1L : 1L);
        EXPECT_EQ(bracket(unknot(n, k), c), mu * Delta(c, n)) << p << " n=" << n << " k=" << k;
      }
  }
}

TEST(Bracket, HopfLink) {
  const auto& c = make_context(5);
  EXPECT_EQ(bracket(hopf(1, 1), c), C::qint(c, 4));
  EXPECT_EQ(bracket(hopf(1, 1, false), c), C::qint(c, 4));
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      C s = C::qint(c, (i + 1) * (j + 1)) * ((i + j) % 2 ? -1L : 1L);
      EXPECT_EQ(bracket(hopf(i, j), c), s) << i << " " << j;
    }
}

TEST(Bracket, ReidemeisterTwoThree) {
  const auto& c = make_context(7);
  // RII: two strands crossing twice cancel; closed with two caps
  for (int a : {1, 2}) {
    for (int b : {1, 3}) {
      MorseBuilder x;
      x.cup(0, a).cup(2, b).cross(1, true).cross(1, false).cross(1, true).cross(1, false).cap(0).cap(0);
      MorseBuilder y;
      y.cup(0, a).cup(2, b).cap(0).cap(0);
      EXPECT_EQ(bracket(x.build(), c), bracket(y.build(), c));
    }
  }
  // RIII on three strands of colors 1, 2, 1, relative version
  MorseBuilder l, r;
  l.top({1, 2, 1}).cross(0, true).cross(1, true).cross(0, true).bottom();
  r.top({1, 2, 1}).cross(1, true).cross(0, true).cross(1, true).bottom();
  EXPECT_EQ(bracket_relative(l.build(), c), bracket_relative(r.build(), c));
}

TEST(Bracket, RelativeProjector) {
  const auto& c = make_context(5);
  for (int n = 1; n <= 3; ++n) {
    MorseBuilder b;
    b.top({n}).bottom();
    auto v = bracket_relative(b.build(), c);
    EXPECT_EQ(v, jw_projector(n, c)) << n;
  }
}

TEST(Bracket, ThetaGraph) {
  const auto& c = make_context(5);
  // theta(1,1,2): split the top arc into 1,1 and merge
  MorseBuilder b;
  b.cup(0, 2).split(0, 1, 1).merge(0, 2).cap(0);
  C th = bracket(b.build(), c);
  // closed form: (-1)^{i+j+k}[i+j+k+1]![i]![j]![k]!/([i+j]![j+k]![i+k]!) with (i,j,k)=(0,1,1)
  auto fact = [&](int n) {
    C r = C::one(c);
    for (int k = 1; k <= n; ++k) r *= C::qint(c, k);
    return r;
  };
  C expect = fact(3) * fact(0) * fact(1) * fact(1) / (fact(1) * fact(2) * fact(1));
  EXPECT_EQ(th, expect);
}

TEST(Bracket, WidthCap) {
  const auto& c = make_context(5);
  MorseBuilder b;
  b.cup(0, 3).cup(2, 3).cross(1, true).cross(1, false).cap(0).cap(0);
  EXPECT_THROW(bracket(b.build(), c, 2), WidthExceeded);
}

#include "so3/local.hpp"

namespace {

TLVector rel(Local t, const PrimeContext& c) { return bracket_relative(local_tangle(t), c); }

TLVector lin(const std::vector<std::pair<C, Local>>& terms, const PrimeContext& c) {
  TLVector r = rel(Local::Linf, c).scaled(C::zero(c));
  for (const auto& [k, t] : terms) r += rel(t, c).scaled(k);
  return r;
}

}  // namespace

TEST(Skein, ColorTwoRelations) {
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    C A4 = C::A_pow(c, 4), Am4 = C::A_pow(c, -4), dl = C::delta(c), di = dl.inverse();
    EXPECT_EQ(rel(Local::Lplus, c), lin({{A4, Local::L0}, {Am4, Local::Linf}, {-dl, Local::X}}, c));
    EXPECT_EQ(rel(Local::HBar, c), lin({{C::one(c), Local::X}, {-di, Local::Linf}}, c));
    EXPECT_EQ(rel(Local::VBar, c), lin({{C::one(c), Local::X}, {-di, Local::L0}}, c));
  }
}

TEST(Skein, IBarExpansion) {
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    C A4 = C::A_pow(c, 4), Am4 = C::A_pow(c, -4), di = C::delta(c).inverse();
    EXPECT_EQ(rel(Local::VBar, c),
              lin({{(A4 - C::one(c)) * di, Local::L0}, {Am4 * di, Local::Linf}, {-di, Local::Lplus}}, c));
  }
}

// both identities after closing the four ends in random ways
TEST(Skein, IdentitiesUnderClosures) {
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    C A4 = C::A_pow(c, 4), Am4 = C::A_pow(c, -4), dl = C::delta(c), di = dl.inverse(), one = C::one(c);
    int nonzero = 0;
    for (unsigned seed = 1; seed <= 5; ++seed) {
      RandomClosure cl(seed * 7919u + (unsigned)p);
      auto ev = [&](Local t) { return bracket(cl.close(t), c); };
      C l0 = ev(Local::L0), linf = ev(Local::Linf), lp = ev(Local::Lplus), hb = ev(Local::HBar), vb = ev(Local::VBar);
      EXPECT_EQ((A4 - one + Am4) * l0, Am4 * dl * hb + (one - Am4) * dl * vb + lp) << p << " " << seed;
      EXPECT_EQ(vb, (A4 - one) * di * l0 + Am4 * di * linf - di * lp) << p << " " << seed;
      nonzero += !l0.is_zero();
    }
    EXPECT_GE(nonzero, 3);
  }
}
