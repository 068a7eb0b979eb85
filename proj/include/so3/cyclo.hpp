// Exact arithmetic in the cyclotomic field Q(zeta_4p).
//
// Every element is stored over the power basis 1, z, ..., z^{N-1} of
// Q(z), z = zeta_4p, N = 2(p-1), as integer numerators over one common
// positive denominator.  zeta_p = z^4 and i = z^p.
#ifndef SO3_CYCLO_HPP
#define SO3_CYCLO_HPP

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace so3 {

enum class RingKind { ZetaP, Zeta4P };

inline const char* ring_kind_name(RingKind k) {
  return k == RingKind::ZetaP ? "Zzeta_p" : "Zzeta_4p";
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

inline long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

struct PrimeContext {
  int p = 0;
  int d = 0;
  RingKind ring_kind = RingKind::ZetaP;
  int degree = 0;  // Z-rank of O
  int n = 0;       // 4p
  int fdeg = 0;    // [Q(zeta_4p):Q] = 2(p-1)
  // red[m] = coefficients of z^m reduced modulo Phi_4p, 0 <= m < 4p
  std::vector<std::vector<int>> red;
  std::vector<int> units;  // (Z/4p)^*
  int plus_k = 0;          // fixes zeta_p, sends i to -i
};

namespace detail {

inline PrimeContext build_context(int p) {
  PrimeContext c;
  c.p = p;
  c.d = (p - 1) / 2;
  c.ring_kind = (p % 4 == 1) ? RingKind::Zeta4P : RingKind::ZetaP;
  c.degree = (c.ring_kind == RingKind::Zeta4P) ? 2 * (p - 1) : p - 1;
  c.n = 4 * p;
  c.fdeg = 2 * (p - 1);
  const int N = c.fdeg;
  // Phi_4p(x) = Phi_p(-x^2) = sum_k (-1)^k x^{2k}; x^N = -sum_{k<p-1} (-1)^k x^{2k}
  std::vector<int> top(N, 0);
  for (int k = 0; k < p - 1; ++k) top[2 * k] = (k % 2 == 0) ? -1 : 1;
  c.red.assign(c.n, std::vector<int>(N, 0));
  for (int m = 0; m < N; ++m) c.red[m][m] = 1;
  for (int m = N; m < c.n; ++m) {
    const auto& prev = c.red[m - 1];
    std::vector<int> cur(N, 0);
    for (int j = 0; j + 1 < N; ++j) cur[j + 1] = prev[j];
    int lead = prev[N - 1];
    if (lead != 0)
      for (int j = 0; j < N; ++j) cur[j] += lead * top[j];
    c.red[m] = cur;
  }
  for (int k = 1; k < c.n; ++k)
    if (k % 2 != 0 && k % p != 0) c.units.push_back(k);
  for (int k = 1; k < c.n; ++k)
    if (k % p == 1 && k % 4 == 3) c.plus_k = k;
  return c;
}

}  // namespace detail

// Contexts are created once per prime and live for the whole process.
inline const PrimeContext& make_context(int p) {
  if (!is_prime(p) || p < 5)
    throw std::invalid_argument("make_context: p must be a prime >= 5, got " + std::to_string(p));
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PrimeContext>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(p);
  if (it != table.end()) return *it->second;
  auto ptr = std::make_unique<PrimeContext>(detail::build_context(p));
  auto& ref = *ptr;
  table.emplace(p, std::move(ptr));
  return ref;
}

class CycloElem {
 public:
  CycloElem() = default;
  explicit CycloElem(const PrimeContext& ctx) : ctx_(&ctx), num_(ctx.fdeg), den_(1) {}
  CycloElem(const PrimeContext& ctx, const mpq_class& q) : CycloElem(ctx) {
    num_[0] = q.get_num();
    den_ = q.get_den();
  }
  CycloElem(const PrimeContext& ctx, long v) : CycloElem(ctx) { num_[0] = v; }
  CycloElem(const PrimeContext& ctx, std::vector<mpz_class> num, mpz_class den)
      : ctx_(&ctx), num_(std::move(num)), den_(std::move(den)) {
    if ((int)num_.size() != ctx.fdeg) throw std::invalid_argument("CycloElem: wrong coefficient count");
    if (den_ == 0) throw std::domain_error("CycloElem: zero denominator");
    normalize();
  }

  static CycloElem zero(const PrimeContext& c) { return CycloElem(c); }
  static CycloElem one(const PrimeContext& c) { return CycloElem(c, 1L); }
  // z^k with z = zeta_4p
  static CycloElem zeta4p(const PrimeContext& c, long k) {
    CycloElem r(c);
    const auto& row = c.red[mod(k, c.n)];
    for (int j = 0; j < c.fdeg; ++j) r.num_[j] = row[j];
    return r;
  }
  static CycloElem zeta_p(const PrimeContext& c, long k) { return zeta4p(c, 4 * mod(k, c.p)); }
  static CycloElem imag_unit(const PrimeContext& c) { return zeta4p(c, c.p); }
  static CycloElem h(const PrimeContext& c) { return one(c) - zeta_p(c, 1); }
  // A = -zeta_p^{d+1}, a primitive 2p-th root of unity with A^2 = zeta_p
  static CycloElem A_pow(const PrimeContext& c, long k) {
    CycloElem r = zeta_p(c, mod(k, 2L * c.p) * (c.d + 1));
    return (mod(k, 2) == 1) ? -r : r;
  }
  static CycloElem A(const PrimeContext& c) { return A_pow(c, 1); }
  // [n] = (zeta^n - zeta^-n)/(zeta - zeta^-1) = sum_{k<n} zeta^{n-1-2k}
  static CycloElem qint(const PrimeContext& c, long n) {
    if (n < 0) return -qint(c, -n);
    CycloElem r(c);
    for (long k = 0; k < n; ++k) r += zeta_p(c, n - 1 - 2 * k);
    return r;
  }
  static CycloElem delta(const PrimeContext& c) { return -qint(c, 2); }

  const PrimeContext& ctx() const {
    if (!ctx_) throw std::logic_error("CycloElem: no context");
    return *ctx_;
  }
  bool has_ctx() const { return ctx_ != nullptr; }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  mpq_class coeff(int j) const { return mpq_class(num_[j], den_); }

  bool is_zero() const {
    for (const auto& v : num_)
      if (v != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t j = 1; j < num_.size(); ++j)
      if (num_[j] != 0) return false;
    return true;
  }
  bool is_integral() const { return den_ == 1; }
  // membership in the subfield Q(zeta_p)
  bool in_Qzeta_p() const { return galois(ctx().plus_k) == *this; }
  bool in_O() const {
    if (!is_integral()) return false;
    return ctx().ring_kind == RingKind::Zeta4P || in_Qzeta_p();
  }
  bool in_Oplus() const { return is_integral() && in_Qzeta_p(); }

  CycloElem operator-() const {
    CycloElem r = *this;
    for (auto& v : r.num_) v = -v;
    return r;
  }
  CycloElem& operator+=(const CycloElem& o) {
    check(o);
    if (den_ == o.den_) {
      for (size_t j = 0; j < num_.size(); ++j) num_[j] += o.num_[j];
    } else {
      for (size_t j = 0; j < num_.size(); ++j) num_[j] = num_[j] * o.den_ + o.num_[j] * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  CycloElem& operator-=(const CycloElem& o) { return *this += -o; }
  CycloElem& operator*=(const CycloElem& o) {
    *this = *this * o;
    return *this;
  }
  CycloElem& operator/=(const CycloElem& o) {
    *this = *this / o;
    return *this;
  }
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    a.check(b);
    const PrimeContext& c = *a.ctx_;
    const int N = c.fdeg;
    std::vector<mpz_class> conv(2 * N - 1);
    for (int i = 0; i < N; ++i) {
      if (a.num_[i] == 0) continue;
      for (int j = 0; j < N; ++j)
        if (b.num_[j] != 0) mpz_addmul(conv[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
    CycloElem r(c);
    for (int m = 0; m < 2 * N - 1; ++m) {
      if (conv[m] == 0) continue;
      const auto& row = c.red[m];
      for (int j = 0; j < N; ++j) {
        if (row[j] == 1) r.num_[j] += conv[m];
        else if (row[j] == -1) r.num_[j] -= conv[m];
        else if (row[j] != 0) r.num_[j] += conv[m] * row[j];
      }
    }
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }
  friend CycloElem operator*(const CycloElem& a, long s) {
    CycloElem r = a;
    for (auto& v : r.num_) v *= s;
    r.normalize();
    return r;
  }
  friend CycloElem operator*(long s, const CycloElem& a) { return a * s; }
  friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }
  friend bool operator==(const CycloElem& a, const CycloElem& b) {
    if (a.ctx_ != b.ctx_) return false;
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

  // z -> z^k for k a unit mod 4p
  CycloElem galois(long k) const {
    const PrimeContext& c = ctx();
    CycloElem r(c);
    for (int j = 0; j < c.fdeg; ++j) {
      if (num_[j] == 0) continue;
      const auto& row = c.red[mod((long)j * k, c.n)];
      for (int t = 0; t < c.fdeg; ++t)
        if (row[t] != 0) r.num_[t] += num_[j] * row[t];
    }
    r.den_ = den_;
    r.normalize();
    return r;
  }
  CycloElem conj() const { return galois(ctx().n - 1); }

  // absolute norm from Q(zeta_4p)
  mpq_class norm() const {
    CycloElem prod = one(ctx());
    for (int k : ctx().units) prod = prod * galois(k);
    if (!prod.is_rational()) throw std::logic_error("norm: product of conjugates is not rational");
    return prod.coeff(0);
  }
  // norm from Q(zeta_p); requires the element to lie in Q(zeta_p)
  mpq_class norm_p() const {
    if (!in_Qzeta_p()) throw std::domain_error("norm_p: element is not in Q(zeta_p)");
    const PrimeContext& c = ctx();
    CycloElem prod = one(c);
    for (int k : c.units)
      if (k % 4 == 1) prod = prod * galois(k);
    if (!prod.is_rational()) throw std::logic_error("norm_p: product of conjugates is not rational");
    return prod.coeff(0);
  }
  CycloElem inverse() const {
    if (is_zero()) throw std::domain_error("CycloElem: division by zero");
    const PrimeContext& c = ctx();
    CycloElem rest = one(c);
    for (int k : c.units)
      if (k != 1) rest = rest * galois(k);
    CycloElem n = *this * rest;
    if (!n.is_rational()) throw std::logic_error("inverse: norm is not rational");
    mpq_class q = n.coeff(0);
    return rest * CycloElem(c, mpq_class(1) / q);
  }
  CycloElem pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloElem r = one(ctx()), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < (int)num_.size(); ++j) {
      if (num_[j] == 0) continue;
      mpq_class q(num_[j], den_);
      q.canonicalize();
      if (!first) os << (q < 0 ? " - " : " + ");
      else if (q < 0) os << "-";
      mpq_class a = abs(q);
      if (j == 0) os << a.get_str();
      else {
        if (a != 1) os << a.get_str() << "*";
        os << "z^" << j;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void check(const CycloElem& o) const {
    if (!ctx_ || ctx_ != o.ctx_) throw std::logic_error("CycloElem: context mismatch");
  }
  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& v : num_) v = -v;
    }
    if (den_ == 1) return;
    mpz_class g = den_;
    for (const auto& v : num_) {
      if (v == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g != 1) {
      den_ /= g;
      for (auto& v : num_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }

  const PrimeContext* ctx_ = nullptr;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

inline int legendre(long a, long p) {
  a = mod(a, p);
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Gauss sum G = sum_k (k/p) zeta_p^k, with G^2 = (-1/p) p.
inline CycloElem gauss_sum(const PrimeContext& c) {
  CycloElem g(c);
  for (int k = 1; k < c.p; ++k) g += CycloElem::zeta_p(c, k) * legendre(k, c.p);
  return g;
}

// D with D^2 = -p / (zeta_p - zeta_p^-1)^2; the sign is chosen so that the
// highest nonzero power-basis coefficient is positive.
inline CycloElem D_elem(const PrimeContext& c) {
  CycloElem s = gauss_sum(c);
  if (c.p % 4 == 1) s = s * CycloElem::imag_unit(c);
  CycloElem D = s / (CycloElem::zeta_p(c, 1) - CycloElem::zeta_p(c, -1));
  const auto& num = D.numerators();
  for (int j = c.fdeg - 1; j >= 0; --j) {
    if (num[j] == 0) continue;
    if (num[j] < 0) D = -D;
    break;
  }
  return D;
}

constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

// Largest k with x / h^k in O, by iterated exact division; kInfiniteValuation for 0.
inline long h_valuation(const CycloElem& x) {
  if (!x.in_O()) throw std::domain_error("h_valuation: element is not in O");
  if (x.is_zero()) return kInfiniteValuation;
  const PrimeContext& c = x.ctx();
  static thread_local std::map<int, CycloElem> hinv_cache;
  auto it = hinv_cache.find(c.p);
  if (it == hinv_cache.end()) it = hinv_cache.emplace(c.p, CycloElem::h(c).inverse()).first;
  const CycloElem& hinv = it->second;
  long k = 0;
  CycloElem y = x;
  for (;;) {
    CycloElem q = y * hinv;
    if (!q.in_O()) break;
    y = q;
    ++k;
  }
  return k;
}

// Valuation of a field element: v(num) - v(den) after clearing the integer
// denominator.  Only defined when the result is determined by h-divisibility,
// which holds because rational integers have valuation (p-1) * v_p.
inline long h_valuation_field(const CycloElem& x) {
  if (x.is_zero()) return kInfiniteValuation;
  const PrimeContext& c = x.ctx();
  mpz_class den = x.denominator();
  long vp = 0;
  while (den % c.p == 0) {
    den /= c.p;
    ++vp;
  }
  CycloElem y = x * CycloElem(c, mpq_class(x.denominator()));
  // y is integral; for p = 1 mod 4 it may leave Z[zeta_p] but stays in O.
  return h_valuation(y) - vp * (c.p - 1);
}

inline bool is_unit(const CycloElem& x) {
  if (!x.in_O()) throw std::domain_error("is_unit: element is not in O");
  if (x.is_zero()) return false;
  return abs(x.norm()) == 1;
}

// Reduction O -> O/hO = F_p[i]/(i^2+1), z -> i^{p mod 4}.
struct Residue {
  long re = 0, im = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

inline Residue reduce_mod_h(const CycloElem& x) {
  if (!x.in_O()) throw std::domain_error("reduce_mod_h: element is not in O");
  const PrimeContext& c = x.ctx();
  long re = 0, im = 0;
  for (int j = 0; j < c.fdeg; ++j) {
    long v = mpz_class(x.numerators()[j] % c.p).get_si();
    switch ((long)j * c.p % 4) {
      case 0: re += v; break;
      case 1: im += v; break;
      case 2: re -= v; break;
      default: im -= v; break;
    }
  }
  return {mod(re, c.p), mod(im, c.p)};
}

}  // namespace so3

#endif
