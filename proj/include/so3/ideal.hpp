// Ideals of O and O+ as Z-lattices in Hermite normal form.
#ifndef SO3_IDEAL_HPP
#define SO3_IDEAL_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "so3/cyclo.hpp"

namespace so3 {

enum class Ring { O, Oplus };

inline const char* ring_name(Ring r) { return r == Ring::O ? "O" : "O+"; }

using ZMatrix = std::vector<std::vector<mpz_class>>;
using QMatrix = std::vector<std::vector<mpq_class>>;

// Z-basis of the ring inside Q(zeta_4p) together with an exact coordinate map.
struct RingBasis {
  const PrimeContext* ctx = nullptr;
  Ring ring = Ring::O;
  std::vector<CycloElem> basis;
  std::vector<int> rows;  // power-basis rows used for the square solve
  QMatrix inv;            // inverse of the selected square block
};

namespace detail {

// Exact inverse of a square rational matrix; empty optional if singular.
inline std::optional<QMatrix> q_inverse(QMatrix m) {
  const size_t n = m.size();
  QMatrix inv(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    mpq_class s = 1 / m[col][col];
    for (size_t j = 0; j < n; ++j) {
      m[col][j] *= s;
      inv[col][j] *= s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline RingBasis build_ring_basis(const PrimeContext& c, Ring ring) {
  RingBasis rb;
  rb.ctx = &c;
  rb.ring = ring;
  if (ring == Ring::O && c.ring_kind == RingKind::Zeta4P) {
    for (int j = 0; j < c.fdeg; ++j) rb.basis.push_back(CycloElem::zeta4p(c, j));
  } else {
    for (int k = 0; k < c.p - 1; ++k) rb.basis.push_back(CycloElem::zeta_p(c, k));
  }
  const size_t r = rb.basis.size();
  // greedy choice of independent rows
  std::vector<int> chosen;
  QMatrix echelon;
  for (int row = 0; row < c.fdeg && chosen.size() < r; ++row) {
    std::vector<mpq_class> v(r);
    for (size_t k = 0; k < r; ++k) v[k] = rb.basis[k].coeff(row);
    std::vector<mpq_class> w = v;
    for (const auto& e : echelon) {
      size_t lead = 0;
      while (e[lead] == 0) ++lead;
      if (w[lead] != 0) {
        mpq_class f = w[lead] / e[lead];
        for (size_t k = 0; k < r; ++k) w[k] -= f * e[k];
      }
    }
    if (std::any_of(w.begin(), w.end(), [](const mpq_class& q) { return q != 0; })) {
      echelon.push_back(w);
      chosen.push_back(row);
    }
  }
  QMatrix sq;
  for (int row : chosen) {
    std::vector<mpq_class> v(r);
    for (size_t k = 0; k < r; ++k) v[k] = rb.basis[k].coeff(row);
    sq.push_back(v);
  }
  auto inv = q_inverse(sq);
  if (!inv) throw std::logic_error("ring basis: singular block");
  rb.rows = chosen;
  rb.inv = *inv;
  return rb;
}

}  // namespace detail

inline const RingBasis& ring_basis(const PrimeContext& c, Ring ring) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<RingBasis>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(c.p, (int)ring);
  auto it = table.find(key);
  if (it == table.end())
    it = table.emplace(key, std::make_unique<RingBasis>(detail::build_ring_basis(c, ring))).first;
  return *it->second;
}

// Rational coordinates of x in the ring's Z-basis, or nullopt if x is
// outside the Q-span of that basis.
inline std::optional<std::vector<mpq_class>> ring_coordinates_q(const CycloElem& x, Ring ring) {
  const RingBasis& rb = ring_basis(x.ctx(), ring);
  const size_t r = rb.basis.size();
  std::vector<mpq_class> y(r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) y[i] += rb.inv[i][j] * x.coeff(rb.rows[j]);
  CycloElem back = CycloElem::zero(x.ctx());
  for (size_t i = 0; i < r; ++i)
    if (y[i] != 0) back += rb.basis[i] * CycloElem(x.ctx(), y[i]);
  if (back != x) return std::nullopt;
  return y;
}

// Integer coordinates in the ring's Z-basis; nullopt if x is not in the ring.
inline std::optional<std::vector<mpz_class>> ring_coordinates(const CycloElem& x, Ring ring) {
  auto q = ring_coordinates_q(x, ring);
  if (!q) return std::nullopt;
  std::vector<mpz_class> z;
  for (auto& v : *q) {
    if (v.get_den() != 1) return std::nullopt;
    z.push_back(v.get_num());
  }
  return z;
}

inline bool in_ring(const CycloElem& x, Ring ring) { return ring_coordinates(x, ring).has_value(); }

// Row Hermite normal form: upper triangular, positive pivots, entries above
// each pivot reduced into [0, pivot).  Zero rows are dropped.
inline ZMatrix hermite_normal_form(ZMatrix m) {
  if (m.empty()) return m;
  const size_t cols = m[0].size();
  size_t prow = 0;
  for (size_t col = 0; col < cols && prow < m.size(); ++col) {
    for (;;) {
      size_t best = m.size();
      for (size_t r = prow; r < m.size(); ++r)
        if (m[r][col] != 0 && (best == m.size() || abs(m[r][col]) < abs(m[best][col]))) best = r;
      if (best == m.size()) break;
      std::swap(m[prow], m[best]);
      bool done = true;
      for (size_t r = prow + 1; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[prow][col].get_mpz_t());
        for (size_t j = col; j < cols; ++j) m[r][j] -= q * m[prow][j];
        if (m[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[prow][col] == 0) continue;
    if (m[prow][col] < 0)
      for (size_t j = col; j < cols; ++j) m[prow][j] = -m[prow][j];
    for (size_t r = 0; r < prow; ++r) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[prow][col].get_mpz_t());
      if (q != 0)
        for (size_t j = col; j < cols; ++j) m[r][j] -= q * m[prow][j];
    }
    ++prow;
  }
  m.resize(prow);
  return m;
}

class IdealLattice {
 public:
  IdealLattice() = default;

  static IdealLattice from_generators(const std::vector<CycloElem>& gens, const PrimeContext& c, Ring ring) {
    const RingBasis& rb = ring_basis(c, ring);
    ZMatrix rows;
    for (const auto& g : gens) {
      if (!in_ring(g, ring))
        throw std::domain_error(std::string("ideal: generator outside ") + ring_name(ring) + ": " + g.to_string());
      if (g.is_zero()) continue;
      for (const auto& b : rb.basis) rows.push_back(*ring_coordinates(g * b, ring));
    }
    IdealLattice I;
    I.ctx_ = &c;
    I.ring_ = ring;
    I.rank_ = (int)rb.basis.size();
    I.hnf_ = hermite_normal_form(rows);
    return I;
  }

  Ring ring() const { return ring_; }
  const ZMatrix& hnf() const { return hnf_; }
  int rank() const { return rank_; }
  bool is_zero() const { return hnf_.empty(); }
  bool full_rank() const { return (int)hnf_.size() == rank_; }
  // [ring : ideal] as abelian groups; 0 for the zero ideal
  mpz_class index() const {
    if (!full_rank()) return 0;
    mpz_class r = 1;
    for (size_t i = 0; i < hnf_.size(); ++i) r *= hnf_[i][i];
    return r;
  }
  bool is_unit_ideal() const { return index() == 1; }

  bool contains(const CycloElem& x) const {
    auto y = ring_coordinates(x, ring_);
    if (!y) return false;
    std::vector<mpz_class> v = *y;
    size_t col = 0;
    for (const auto& row : hnf_) {
      while (row[col] == 0) {
        if (v[col] != 0) return false;
        ++col;
      }
      if (v[col] % row[col] != 0) return false;
      mpz_class q = v[col] / row[col];
      for (size_t j = col; j < v.size(); ++j) v[j] -= q * row[j];
      ++col;
    }
    for (; col < v.size(); ++col)
      if (v[col] != 0) return false;
    return true;
  }

  friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
    return a.ring_ == b.ring_ && a.ctx_ == b.ctx_ && a.hnf_ == b.hnf_;
  }

 private:
  const PrimeContext* ctx_ = nullptr;
  Ring ring_ = Ring::O;
  int rank_ = 0;
  ZMatrix hnf_;
};

}  // namespace so3

#endif
