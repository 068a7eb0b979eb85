// Temperley-Lieb diagrams and Jones-Wenzl projectors.
//
// A diagram on n strands pairs 2n points: 0..n-1 along the top (left to
// right) and n..2n-1 along the bottom.  d1 * d2 stacks d1 on top of d2.
#ifndef SO3_TL_HPP
#define SO3_TL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "so3/zcyc.hpp"

namespace so3 {

using Pairing = std::vector<int>;

inline bool is_planar_pairing(const Pairing& m) {
  const int n = (int)m.size();
  for (int a = 0; a < n; ++a) {
    int b = m[a];
    if (b < 0 || b >= n || b == a || m[b] != a) return false;
    if (b < a) continue;
    for (int c = a + 1; c < b; ++c)
      if (m[c] < a || m[c] > b) return false;
  }
  return true;
}

inline Pairing tl_identity(int n) {
  Pairing m(2 * n);
  for (int i = 0; i < n; ++i) {
    m[i] = n + i;
    m[n + i] = i;
  }
  return m;
}

// e_k joins strands k and k+1 (0-based) on top and on bottom.
inline Pairing tl_generator(int n, int k) {
  Pairing m = tl_identity(n);
  m[k] = k + 1;
  m[k + 1] = k;
  m[n + k] = n + k + 1;
  m[n + k + 1] = n + k;
  return m;
}

// Composition d1 on top of d2; returns the product pairing and the number
// of closed loops formed in the middle.
inline std::pair<Pairing, int> tl_compose(const Pairing& d1, const Pairing& d2) {
  const int n = (int)d1.size() / 2;
  Pairing out(2 * n, -1);
  std::vector<char> seen(n, 0);  // middle points
  // walker: side 0 = d1, side 1 = d2; returns exit point in result indexing
  auto walk = [&](int side, int pt) {
    for (;;) {
      if (side == 0) {
        int q = d1[pt];
        if (q < n) return q;
        seen[q - n] = 1;
        side = 1;
        pt = q - n;
      } else {
        int q = d2[pt];
        if (q >= n) return q;
        seen[q] = 1;
        side = 0;
        pt = n + q;
      }
    }
  };
  for (int t = 0; t < n; ++t) {
    if (out[t] >= 0) continue;
    int e = walk(0, t);
    out[t] = e;
    out[e] = t;
  }
  for (int b = n; b < 2 * n; ++b) {
    if (out[b] >= 0) continue;
    int e = walk(1, b);
    out[b] = e;
    out[e] = b;
  }
  int loops = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++loops;
    int side = 0, pt = n + i;
    do {
      if (side == 0) {
        int q = d1[pt];
        seen[q - n] = 1;
        side = 1;
        pt = q - n;
      } else {
        int q = d2[pt];
        seen[q] = 1;
        side = 0;
        pt = n + q;
      }
    } while (!(side == 0 && pt == n + i));
  }
  return {out, loops};
}

// Tensor with one extra strand on the right.
inline Pairing tl_extend(const Pairing& m) {
  const int n = (int)m.size() / 2;
  Pairing r(2 * (n + 1));
  auto map = [n](int x) { return x < n ? x : x + 1; };
  for (int i = 0; i < 2 * n; ++i) r[map(i)] = map(m[i]);
  r[n] = 2 * n + 1;
  r[2 * n + 1] = n;
  return r;
}

template <class T>
using TLMap = std::map<Pairing, ZCyc<T>>;

template <class T>
inline TLMap<T> tl_multiply(const TLMap<T>& x, const TLMap<T>& y, const ZCyc<T>& delta) {
  TLMap<T> out;
  for (const auto& [d1, c1] : x)
    for (const auto& [d2, c2] : y) {
      auto [d, loops] = tl_compose(d1, d2);
      ZCyc<T> c = c1 * c2;
      for (int l = 0; l < loops; ++l) c = c * delta;
      auto it = out.find(d);
      if (it == out.end()) out.emplace(d, c);
      else it->second += c;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// f_n with coefficients in Z[zeta_p]; the quantum integers [k], k < p, are units.
inline const TLMap<mpz_class>& jw_projector_z(int p, int n) {
  if (n < 0 || n > p - 2) throw std::out_of_range("jw_projector: need 0 <= n <= p-2");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<TLMap<mpz_class>>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  if (auto it = memo.find(key); it != memo.end()) return *it->second;
  using Z = ZCyc<mpz_class>;
  const Z delta = -Z::qint(p, 2);
  TLMap<mpz_class> f;
  f.emplace(tl_identity(0), Z::constant(p, 1));
  for (int k = 1; k <= n; ++k) {
    auto prev = memo.find({p, k});
    if (prev != memo.end()) {
      f = *prev->second;
      continue;
    }
    TLMap<mpz_class> g;
    for (const auto& [d, c] : f) g.emplace(tl_extend(d), c);
    if (k == 1) {
      f = g;
    } else {
      TLMap<mpz_class> e;
      e.emplace(tl_generator(k, k - 2), Z::constant(p, 1));
      TLMap<mpz_class> ge = tl_multiply(g, e, delta);
      TLMap<mpz_class> geg = tl_multiply(ge, g, delta);
      // coefficient Delta_{k-2}/Delta_{k-1} = -[k-1]/[k]
      Z coef = -(Z::qint(p, k - 1) * Z::qint_inverse(p, k));
      f = g;
      for (const auto& [d, c] : geg) {
        Z term = -(coef * c);
        auto it = f.find(d);
        if (it == f.end()) f.emplace(d, term);
        else it->second += term;
      }
      for (auto it = f.begin(); it != f.end();)
        it = it->second.is_zero() ? f.erase(it) : std::next(it);
    }
    memo.emplace(std::make_pair(p, k), std::make_unique<TLMap<mpz_class>>(f));
  }
  if (n == 0) memo.emplace(key, std::make_unique<TLMap<mpz_class>>(f));
  return *memo.at(key);
}

// Linear combination of planar matchings of labelled boundary points.
struct TLVector {
  int npoints = 0;
  std::map<Pairing, CycloElem> terms;

  CycloElem coeff(const Pairing& m, const PrimeContext& c) const {
    auto it = terms.find(m);
    return it == terms.end() ? CycloElem::zero(c) : it->second;
  }
  void add(const Pairing& m, const CycloElem& v) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!v.is_zero()) terms.emplace(m, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  TLVector& operator+=(const TLVector& o) {
    for (const auto& [m, v] : o.terms) add(m, v);
    return *this;
  }
  TLVector scaled(const CycloElem& s) const {
    TLVector r;
    r.npoints = npoints;
    for (const auto& [m, v] : terms) r.add(m, v * s);
    return r;
  }
  friend bool operator==(const TLVector& a, const TLVector& b) {
    return a.npoints == b.npoints && a.terms == b.terms;
  }
};

inline TLVector jw_projector(int n, const PrimeContext& c) {
  TLVector r;
  r.npoints = 2 * n;
  for (const auto& [d, v] : jw_projector_z(c.p, n)) r.add(d, v.to_cyclo(c));
  return r;
}

}  // namespace so3

#endif
