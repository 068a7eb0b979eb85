// Closed-form recoupling data at A = -zeta_p^{d+1}, together with the
// diagrams that define each quantity (used to cross-check against the
// bracket engine).
#ifndef SO3_RECOUPLING_HPP
#define SO3_RECOUPLING_HPP

#include <array>
#include <map>
#include <mutex>
#include <tuple>

#include "so3/bracket.hpp"
#include "so3/linalg.hpp"

namespace so3 {

inline bool admissible(int a, int b, int c, int p) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2) return false;
  if (a > b + c || b > a + c || c > a + b) return false;
  return a + b + c <= 2 * p - 4;
}

class RecouplingTable {
 public:
  explicit RecouplingTable(const PrimeContext& ctx) : c_(ctx) {
    fact_.push_back(CycloElem::one(c_));
    for (int n = 1; n < 2 * c_.p; ++n) fact_.push_back(fact_.back() * CycloElem::qint(c_, n));
  }

  const PrimeContext& ctx() const { return c_; }
  int max_color() const { return c_.p - 2; }

  // [n]!; vanishes once n >= p
  const CycloElem& qfact(int n) const { return fact_.at(n); }

  CycloElem loop_value(int n) const {
    check(n);
    return CycloElem::qint(c_, n + 1) * ((n % 2) ? -1L : 1L);
  }

  CycloElem theta(int a, int b, int c) const {
    check(a), check(b), check(c);
    if (!admissible(a, b, c, c_.p)) return CycloElem::zero(c_);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::array<int, 3>{a, b, c};
    if (auto it = theta_.find(key); it != theta_.end()) return it->second;
    int i = (b + c - a) / 2, j = (a + c - b) / 2, k = (a + b - c) / 2;
    CycloElem v = fact_[i + j + k + 1] * fact_[i] * fact_[j] * fact_[k] / (fact_[i + j] * fact_[j + k] * fact_[i + k]);
    if ((i + j + k) % 2) v = -v;
    theta_.emplace(key, v);
    return v;
  }

  // Tetrahedral net with edges (a..f) and vertices (a,b,c), (a,e,f),
  // (b,d,f), (c,d,e); opposite edges are (a,d), (b,e), (c,f).
  CycloElem tet(int a, int b, int c, int d, int e, int f) const {
    for (int x : {a, b, c, d, e, f}) check(x);
    if (!admissible(a, b, c, c_.p) || !admissible(a, e, f, c_.p) || !admissible(b, d, f, c_.p) ||
        !admissible(c, d, e, c_.p))
      return CycloElem::zero(c_);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::array<int, 6>{a, b, c, d, e, f};
    if (auto it = tet_.find(key); it != tet_.end()) return it->second;
    const int tri[4] = {(a + b + c) / 2, (a + e + f) / 2, (b + d + f) / 2, (c + d + e) / 2};
    const int total = a + b + c + d + e + f;
    const int quad[3] = {(total - a - d) / 2, (total - b - e) / 2, (total - c - f) / 2};
    const int lo = *std::max_element(tri, tri + 4), hi = *std::min_element(quad, quad + 3);
    CycloElem inner = CycloElem::one(c_);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) inner *= fact_[quad[j] - tri[i]];
    CycloElem edges = fact_[a] * fact_[b] * fact_[c] * fact_[d] * fact_[e] * fact_[f];
    CycloElem sum = CycloElem::zero(c_);
    for (int s = lo; s <= hi; ++s) {
      CycloElem den = CycloElem::one(c_);
      for (int i = 0; i < 4; ++i) den *= fact_[s - tri[i]];
      for (int j = 0; j < 3; ++j) den *= fact_[quad[j] - s];
      CycloElem t = fact_[s + 1] / den;
      sum += (s % 2) ? -t : t;
    }
    CycloElem v = inner / edges * sum;
    tet_.emplace(key, v);
    return v;
  }

  // Recoupling coefficient: the diagram where a,b fuse into j and split into
  // c,d equals the sum over i of sixj(a,b,c,d,i,j) times the diagram where
  // a,c meet at a vertex with i and i,b,d meet at a second vertex.
  CycloElem sixj(int a, int b, int c, int d, int i, int j) const {
    if (!admissible(a, c, i, c_.p) || !admissible(b, d, i, c_.p)) return CycloElem::zero(c_);
    return tet(a, b, j, d, c, i) * loop_value(i) / (theta(a, c, i) * theta(b, d, i));
  }

  // Full-twist eigenvalue on color n: (-1)^n A^{n(n+2)}.
  CycloElem twist(int n) const {
    check(n);
    CycloElem v = CycloElem::A_pow(c_, (long)n * (n + 2));
    return (n % 2) ? -v : v;
  }

  // Bracket of the 0-framed Hopf link colored (i, j).
  CycloElem hopf(int i, int j) const {
    check(i), check(j);
    CycloElem v = CycloElem::qint(c_, (i + 1) * (j + 1));
    return ((i + j) % 2) ? -v : v;
  }

  CMatrix hopf_matrix() const {
    CMatrix s = cmatrix(c_, c_.d, c_.d);
    for (int i = 0; i < c_.d; ++i)
      for (int j = 0; j < c_.d; ++j) s[i][j] = hopf(i, j);
    return s;
  }

  // A loop colored c around a strand colored j acts by this scalar.
  CycloElem encircle_eigenvalue(int c, int j) const { return hopf(c, j) / loop_value(j); }

  // omega in the basis e_0..e_{d-1}: sum_k omega_k S_{kj} = D delta_{0j}.
  const CVector& omega() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (omega_.empty()) {
      CMatrix s = hopf_matrix();
      CMatrix rhs = cmatrix(c_, c_.d, 1);
      rhs[0][0] = D_elem(c_);
      CMatrix x = solve(transpose(s), rhs);
      for (int k = 0; k < c_.d; ++k) omega_.push_back(x[k][0]);
    }
    return omega_;
  }

 private:
  void check(int n) const {
    if (n < 0 || n > c_.p - 2) throw std::out_of_range("color out of range: " + std::to_string(n));
  }

  const PrimeContext& c_;
  std::vector<CycloElem> fact_;
  mutable std::mutex mu_;
  mutable std::map<std::array<int, 3>, CycloElem> theta_;
  mutable std::map<std::array<int, 6>, CycloElem> tet_;
  mutable CVector omega_;
};

inline const RecouplingTable& recoupling(const PrimeContext& c) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<RecouplingTable>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(c.p);
  if (it == table.end()) it = table.emplace(c.p, std::make_unique<RecouplingTable>(c)).first;
  return *it->second;
}

// Defining diagrams.
namespace diagrams {

inline ColoredDiagram unknot(int n, int twists = 0) {
  MorseBuilder b;
  b.cup(0, n);
  if (twists) b.twist(0, twists);
  b.cap(0);
  return b.build();
}

inline ColoredDiagram theta(int a, int b, int c) {
  MorseBuilder m;
  m.cup(0, a).split(1, b, c).merge(0, c).cap(0);
  return m.build();
}

inline ColoredDiagram tet(int a, int b, int c, int d, int e, int f) {
  MorseBuilder m;
  m.cup(0, a).split(0, c, b).split(2, f, e).merge(1, d).merge(0, e).cap(0);
  return m.build();
}

inline ColoredDiagram hopf(int i, int j, int framing_i = 0) {
  MorseBuilder b;
  b.cup(0, i).cup(2, j).cross(1, true).cross(1, true);
  if (framing_i) b.twist(0, framing_i);
  b.cap(0).cap(0);
  return b.build();
}

// Two relative trees on boundary (a, b | c, d).
inline ColoredDiagram fuse_channel(int a, int b, int c, int d, int j) {
  MorseBuilder m;
  m.top({a, b}).merge(0, j).split(0, c, d).bottom();
  return m.build();
}
inline ColoredDiagram side_channel(int a, int b, int c, int d, int i) {
  MorseBuilder m;
  m.top({a, b}).split(0, c, i).merge(1, d).bottom();
  return m.build();
}

}  // namespace diagrams

}  // namespace so3

#endif
