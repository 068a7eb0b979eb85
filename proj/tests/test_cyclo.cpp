#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "so3/cyclo.hpp"

using namespace so3;
using C = CycloElem;

TEST(Cyclo, Contexts) {
  const auto& c5 = make_context(5);
  EXPECT_EQ(c5.ring_kind, RingKind::Zeta4P);
  EXPECT_EQ(c5.degree, 8);
  EXPECT_EQ(c5.d, 2);
  const auto& c7 = make_context(7);
  EXPECT_EQ(c7.ring_kind, RingKind::ZetaP);
  EXPECT_EQ(c7.degree, 6);
  EXPECT_EQ(c7.d, 3);
  EXPECT_THROW(make_context(4), std::invalid_argument);
  EXPECT_THROW(make_context(3), std::invalid_argument);
  EXPECT_EQ(&make_context(5), &c5);
}

TEST(Cyclo, RootsOfUnity) {
  for (int p : {5, 7, 11, 13}) {
    const auto& c = make_context(p);
    C z = C::zeta4p(c, 1);
    EXPECT_EQ(z.pow(4 * p), C::one(c));
    EXPECT_NE(z.pow(2 * p), C::one(c));
    EXPECT_NE(z.pow(4), C::one(c));
    C i = C::imag_unit(c);
    EXPECT_EQ(i * i, C(c, -1L));
    C A = C::A(c);
    EXPECT_EQ(A * A, C::zeta_p(c, 1));
    EXPECT_EQ(A.pow(2 * p), C::one(c));
    EXPECT_NE(A.pow(p), C::one(c));
    EXPECT_EQ(C::A_pow(c, -3) * C::A_pow(c, 3), C::one(c));
    EXPECT_EQ(C::delta(c), -(A * A) - A.pow(-2));
  }
}

TEST(Cyclo, FieldOps) {
  const auto& c = make_context(5);
  C h = C::h(c);
  EXPECT_EQ(h.conj(), -C::zeta_p(c, -1) * h);
  EXPECT_EQ(C(c, 2L) - C::qint(c, 2), -C::zeta_p(c, -1) * h * h);
  C x = C::zeta4p(c, 3) + C(c, mpq_class(2, 3));
  EXPECT_EQ(C::one(c) * x, x);
  EXPECT_EQ(x / x, C::one(c));
  EXPECT_EQ(x.conj().conj(), x);
  EXPECT_EQ((x * h).conj(), x.conj() * h.conj());
  EXPECT_THROW(x / C::zero(c), std::domain_error);
  EXPECT_TRUE((x * x.conj()).conj() == x * x.conj());
}

TEST(Cyclo, Valuations) {
  for (int p : {5, 7, 11}) {
    const auto& c = make_context(p);
    EXPECT_EQ(h_valuation(C(c, (long)p)), p - 1);
    for (int n = 1; n <= p - 2; ++n) EXPECT_EQ(h_valuation(C::qint(c, n)), 0) << n;
    C D = D_elem(c);
    EXPECT_EQ(h_valuation(D), c.d - 1);
    C s = C::zeta_p(c, 1) - C::zeta_p(c, -1);
    EXPECT_EQ(D * D * s * s, C(c, (long)-p));
    EXPECT_EQ(h_valuation(C::zero(c)), kInfiniteValuation);
  }
  const auto& c = make_context(5);
  EXPECT_EQ(h_valuation(C(c, 2L) - C::qint(c, 2)), 2);
  EXPECT_THROW(h_valuation(C(c, mpq_class(1, 2))), std::domain_error);
  // i is not in O at p = 7
  EXPECT_THROW(h_valuation(C::imag_unit(make_context(7))), std::domain_error);
}

TEST(Cyclo, Units) {
  const auto& c = make_context(5);
  C A4 = C::A_pow(c, 4), Am4 = C::A_pow(c, -4);
  EXPECT_TRUE(is_unit(A4 - C::one(c) + Am4));
  EXPECT_FALSE(is_unit(C::h(c)));
  C g = C::one(c) + 2 * C::zeta_p(c, 3);
  EXPECT_FALSE(is_unit(g));
  EXPECT_EQ(g.norm_p(), 11);
  // floating oracle for the norm
  std::complex<double> prod = 1;
  for (int k = 1; k < 5; ++k) prod *= 1.0 + 2.0 * std::polar(1.0, 2 * M_PI * 3 * k / 5.0);
  EXPECT_NEAR(prod.real(), 11.0, 1e-9);
  EXPECT_EQ(g.norm(), 121);
}

TEST(Cyclo, ResidueMap) {
  const auto& c = make_context(5);
  EXPECT_EQ(reduce_mod_h(C::h(c)), (Residue{0, 0}));
  EXPECT_EQ(reduce_mod_h(C::zeta_p(c, 2)), (Residue{1, 0}));
  EXPECT_EQ(reduce_mod_h(C::imag_unit(c)), (Residue{0, 1}));
  EXPECT_EQ(reduce_mod_h(C::qint(c, 3)), (Residue{3, 0}));
  const auto& c7 = make_context(7);
  EXPECT_EQ(reduce_mod_h(C::qint(c7, 4)), (Residue{4, 0}));
  EXPECT_EQ(reduce_mod_h(D_elem(c7) * C::h(c7)), (Residue{0, 0}));
}
