#include <gtest/gtest.h>

#include <random>

#include "so3/ideal.hpp"

using namespace so3;
using C = CycloElem;

TEST(Ideal, ZeroAndUnit) {
  const auto& c = make_context(5);
  auto z = IdealLattice::from_generators({C::zero(c)}, c, Ring::Oplus);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.index(), 0);
  auto u = IdealLattice::from_generators({C::one(c)}, c, Ring::O);
  EXPECT_TRUE(u.is_unit_ideal());
  auto hu = IdealLattice::from_generators({C::h(c), C(c, 2L)}, c, Ring::Oplus);
  EXPECT_TRUE(hu.is_unit_ideal());
}

TEST(Ideal, Eleven) {
  const auto& c = make_context(5);
  C g = C::one(c) + 2 * C::zeta_p(c, 3);
  auto I = IdealLattice::from_generators({g}, c, Ring::Oplus);
  EXPECT_EQ(I.index(), 11);
  C other = g * (C::zeta_p(c, 1) + C(c, 3L)) - g * C::qint(c, 2);
  auto J = IdealLattice::from_generators({other, g}, c, Ring::Oplus);
  EXPECT_EQ(I, J);
  EXPECT_TRUE(I.contains(other));
  EXPECT_FALSE(I.contains(C::one(c)));
  EXPECT_TRUE(I.contains(C(c, 11L)));
  // unit multiple and order independence
  auto K = IdealLattice::from_generators({g * C::zeta_p(c, 2) * C::qint(c, 2), other}, c, Ring::Oplus);
  EXPECT_EQ(I, K);
  // in O = Z[zeta_20] the index is the absolute norm
  EXPECT_EQ(IdealLattice::from_generators({g}, c, Ring::O).index(), 121);
  EXPECT_THROW(IdealLattice::from_generators({C::imag_unit(c)}, c, Ring::Oplus), std::domain_error);
}

// index of a principal ideal equals the absolute value of the norm
TEST(Ideal, PrincipalIndexIsNorm) {
  std::mt19937 rng(7);
  for (int p : {5, 7}) {
    const auto& c = make_context(p);
    for (int trial = 0; trial < 10; ++trial) {
      C g = C::zero(c);
      for (int k = 0; k < p - 1; ++k) g += C::zeta_p(c, k) * (long)((int)(rng() % 7) - 3);
      if (g.is_zero()) continue;
      auto I = IdealLattice::from_generators({g}, c, Ring::Oplus);
      EXPECT_EQ(I.index(), abs(g.norm_p()));
      EXPECT_TRUE(I.contains(g * C::zeta_p(c, 3)));
    }
  }
}
