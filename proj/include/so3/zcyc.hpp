// Z[zeta_p] with a compact coefficient layout for the bracket engine.
//
// An element is a polynomial in zeta = zeta_p taken mod x^p - 1 and kept
// canonical by forcing the coefficient of x^{p-1} to zero (the sum of all
// powers of zeta vanishes).  T is either a checked int64 or mpz_class.
#ifndef SO3_ZCYC_HPP
#define SO3_ZCYC_HPP

#include <array>
#include <cstdint>
#include <stdexcept>

#include "so3/ideal.hpp"

namespace so3 {

constexpr int kMaxEngineP = 13;

struct Overflow : std::overflow_error {
  Overflow() : std::overflow_error("int64 overflow in bracket engine") {}
};

// Arithmetic helpers specialised for the two coefficient types.
inline int64_t add_c(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline int64_t sub_c(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline int64_t mul_c(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline mpz_class add_c(const mpz_class& a, const mpz_class& b) { return a + b; }
inline mpz_class sub_c(const mpz_class& a, const mpz_class& b) { return a - b; }
inline mpz_class mul_c(const mpz_class& a, const mpz_class& b) { return a * b; }

template <class T>
inline T from_mpz(const mpz_class& v) {
  if constexpr (std::is_same_v<T, int64_t>) {
    if (!v.fits_slong_p()) throw Overflow();
    return v.get_si();
  } else {
    return v;
  }
}
inline mpz_class to_mpz(int64_t v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), v);
  return r;
}
inline mpz_class to_mpz(const mpz_class& v) { return v; }

template <class T>
class ZCyc {
 public:
  ZCyc() = default;
  explicit ZCyc(int p) : p_(p) {
    if (p > kMaxEngineP) throw std::invalid_argument("engine supports p <= 13");
    c_.fill(T(0));
  }
  static ZCyc constant(int p, long v) {
    ZCyc r(p);
    r.c_[0] = T(v);
    return r;
  }
  static ZCyc zeta_pow(int p, long k) {
    ZCyc r(p);
    r.set_monomial(mod(k, p), T(1));
    return r;
  }
  // A^k with A = -zeta^{d+1}
  static ZCyc A_pow(int p, long k) {
    int d = (p - 1) / 2;
    ZCyc r(p);
    r.set_monomial(mod(mod(k, 2L * p) * (d + 1), p), mod(k, 2) ? T(-1) : T(1));
    return r;
  }
  static ZCyc qint(int p, long n) {
    ZCyc r(p);
    long s = n < 0 ? -1 : 1;
    for (long k = 0; k < std::abs(n); ++k) r.add_monomial(mod(std::abs(n) - 1 - 2 * k, p), T(s));
    return r;
  }
  // 1/[n] for n prime to p, a unit in Z[zeta]
  static ZCyc qint_inverse(int p, long n) {
    if (mod(n, p) == 0) throw std::domain_error("[n] is not a unit when p divides n");
    long m = 1;
    while (mod(n * m, p) != 1) ++m;
    ZCyc r(p);
    for (long k = 0; k < m; ++k) r.add_monomial(mod(n * (m - 1 - 2 * k), p), T(1));
    return r;
  }

  int p() const { return p_; }
  const T& operator[](int i) const { return c_[i]; }
  bool is_zero() const {
    for (int i = 0; i < p_; ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  ZCyc& operator+=(const ZCyc& o) {
    for (int i = 0; i < p_; ++i) c_[i] = add_c(c_[i], o.c_[i]);
    return *this;
  }
  ZCyc& operator-=(const ZCyc& o) {
    for (int i = 0; i < p_; ++i) c_[i] = sub_c(c_[i], o.c_[i]);
    return *this;
  }
  friend ZCyc operator+(ZCyc a, const ZCyc& b) { return a += b; }
  friend ZCyc operator-(ZCyc a, const ZCyc& b) { return a -= b; }
  ZCyc operator-() const {
    ZCyc r(p_);
    for (int i = 0; i < p_; ++i) r.c_[i] = sub_c(T(0), c_[i]);
    return r;
  }
  friend ZCyc operator*(const ZCyc& a, const ZCyc& b) {
    const int p = a.p_;
    ZCyc r(p);
    for (int i = 0; i < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < p; ++j) {
        if (b.c_[j] == 0) continue;
        int k = i + j;
        if (k >= p) k -= p;
        r.c_[k] = add_c(r.c_[k], mul_c(a.c_[i], b.c_[j]));
      }
    }
    r.canonicalize();
    return r;
  }
  // this += a * b without allocating a temporary for the product
  void add_product(const ZCyc& a, const ZCyc& b) {
    const int p = p_;
    for (int i = 0; i < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < p; ++j) {
        if (b.c_[j] == 0) continue;
        int k = i + j;
        if (k >= p) k -= p;
        c_[k] = add_c(c_[k], mul_c(a.c_[i], b.c_[j]));
      }
    }
    canonicalize();
  }
  friend bool operator==(const ZCyc& a, const ZCyc& b) {
    if (a.p_ != b.p_) return false;
    for (int i = 0; i < a.p_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const ZCyc& a, const ZCyc& b) { return !(a == b); }

  CycloElem to_cyclo(const PrimeContext& ctx) const {
    CycloElem r = CycloElem::zero(ctx);
    for (int i = 0; i < p_; ++i) {
      if (c_[i] == 0) continue;
      mpz_class v = to_mpz(c_[i]);
      r += CycloElem::zeta_p(ctx, i) * CycloElem(ctx, mpq_class(v));
    }
    return r;
  }
  template <class U>
  ZCyc<U> convert() const {
    ZCyc<U> r(p_);
    for (int i = 0; i < p_; ++i) r.set_raw(i, from_mpz<U>(to_mpz(c_[i])));
    return r;
  }
  void set_raw(int i, const T& v) { c_[i] = v; }

 private:
  void set_monomial(long k, const T& v) {
    c_[k] = v;
    canonicalize();
  }
  void add_monomial(long k, const T& v) {
    c_[k] = add_c(c_[k], v);
    canonicalize();
  }
  void canonicalize() {
    const T top = c_[p_ - 1];
    if (top == 0) return;
    for (int i = 0; i < p_; ++i) c_[i] = sub_c(c_[i], top);
  }

  int p_ = 0;
  std::array<T, kMaxEngineP> c_{};
};

// Exact conversion from a CycloElem lying in Z[zeta_p].
template <class T>
inline ZCyc<T> zcyc_from_cyclo(const CycloElem& x) {
  auto y = ring_coordinates(x, Ring::Oplus);
  if (!y) throw std::domain_error("zcyc_from_cyclo: element not in Z[zeta_p]");
  ZCyc<T> r(x.ctx().p);
  for (size_t k = 0; k < y->size(); ++k) r.set_raw((int)k, from_mpz<T>((*y)[k]));
  return r;
}

}  // namespace so3

#endif
