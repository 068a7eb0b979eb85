// Dense exact linear algebra over Q(zeta_4p).
#ifndef SO3_LINALG_HPP
#define SO3_LINALG_HPP

#include <vector>

#include "so3/cyclo.hpp"

namespace so3 {

using CMatrix = std::vector<std::vector<CycloElem>>;
using CVector = std::vector<CycloElem>;

inline CMatrix cmatrix(const PrimeContext& c, size_t rows, size_t cols) {
  return CMatrix(rows, CVector(cols, CycloElem::zero(c)));
}

inline CMatrix identity_matrix(const PrimeContext& c, size_t n) {
  CMatrix m = cmatrix(c, n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = CycloElem::one(c);
  return m;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  const PrimeContext& c = a.at(0).at(0).ctx();
  CMatrix r = cmatrix(c, a.size(), b.at(0).size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < b[0].size(); ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline CMatrix transpose(const CMatrix& a) {
  const PrimeContext& c = a.at(0).at(0).ctx();
  CMatrix r = cmatrix(c, a[0].size(), a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

inline CMatrix conj_transpose(const CMatrix& a) {
  CMatrix r = transpose(a);
  for (auto& row : r)
    for (auto& x : row) x = x.conj();
  return r;
}

inline CycloElem determinant(CMatrix m) {
  const size_t n = m.size();
  const PrimeContext& c = m.at(0).at(0).ctx();
  CycloElem det = CycloElem::one(c);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return CycloElem::zero(c);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    CycloElem inv = m[col][col].inverse();
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      CycloElem f = m[r][col] * inv;
      for (size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

// Solves m x = b for every column of b; throws if m is singular.
inline CMatrix solve(CMatrix m, CMatrix b) {
  const size_t n = m.size();
  const size_t k = b.at(0).size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("solve: singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    CycloElem inv = m[col][col].inverse();
    for (size_t j = 0; j < n; ++j) m[col][j] *= inv;
    for (size_t j = 0; j < k; ++j) b[col][j] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      CycloElem f = m[r][col];
      for (size_t j = 0; j < n; ++j) m[r][j] -= f * m[col][j];
      for (size_t j = 0; j < k; ++j) b[r][j] -= f * b[col][j];
    }
  }
  return b;
}

inline CMatrix inverse(const CMatrix& m) { return solve(m, identity_matrix(m.at(0).at(0).ctx(), m.size())); }

}  // namespace so3

#endif
