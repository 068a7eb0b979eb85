// The ideal generated by the invariants of closed manifolds containing a
// knot exterior-type piece N with torus boundary.
//
// N is the exterior of an unknotted axis J with surgery on the other
// components.  The complementary solid torus is a neighbourhood of J, so
// the pairing with the basis element vbar^m of that solid torus is the
// invariant of the surgered S^3 with J colored by vbar^m, where
// vbar = hbar^-1 (2 + z) is the conjugate of v.
#ifndef SO3_FKB_HPP
#define SO3_FKB_HPP

#include <string>
#include <vector>

#include "so3/ideal.hpp"
#include "so3/invariants.hpp"

namespace so3 {

struct FkbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KnotInSolidTorus {
  PDLink link;
  int axis = -1;
  int knot = -1;

  static KnotInSolidTorus from_link(PDLink L, const std::string& axis, const std::string& knot, int framing) {
    KnotInSolidTorus N;
    N.axis = L.find(axis);
    N.knot = knot.empty() ? -1 : L.find(knot);
    if (N.axis < 0) throw FkbError("no component named " + axis);
    if (!knot.empty() && N.knot < 0) throw FkbError("no component named " + knot);
    for (int i = 0; i < (int)L.comps.size(); ++i) {
      auto& c = L.comps[i];
      if (i == N.axis) {
        c.role = Role::Axis;
      } else {
        c.role = Role::Surgery;
        if (i == N.knot) c.framing = framing;
      }
    }
    N.link = std::move(L);
    return N;
  }
};

// Coefficients of vbar^m over the axis colors 0..m.
inline std::vector<CycloElem> vbar_power(int m, const PrimeContext& c) {
  std::vector<CycloElem> coef(m + 1, CycloElem::zero(c));
  coef[0] = CycloElem::one(c);
  for (int k = 0; k < m; ++k) {
    std::vector<CycloElem> nx(m + 1, CycloElem::zero(c));
    for (int n = 0; n <= k; ++n) {
      nx[n] += coef[n] * 2L;
      nx[n + 1] += coef[n];
      if (n > 0) nx[n - 1] += coef[n];
    }
    coef = std::move(nx);
  }
  CycloElem s = CycloElem::h(c).conj().inverse().pow(m);
  for (auto& x : coef) x *= s;
  return coef;
}

// Invariant of the closed manifold with the axis colored n.
inline std::vector<CycloElem> axis_colored_values(const KnotInSolidTorus& N, int top, const PrimeContext& c, int d_sign = 1) {
  std::vector<CycloElem> out;
  for (int n = 0; n <= top; ++n) {
    PDLink L = N.link;
    L.comps[N.axis].color = n;
    out.push_back(surgery_value(L, c, nullptr, d_sign));
  }
  return out;
}

// One generator per basis element vbar^m, m = 0..d-1; each lies in O.
inline std::vector<CycloElem> fkb_generators(const KnotInSolidTorus& N, const PrimeContext& c, int d_sign = 1) {
  auto vals = axis_colored_values(N, c.d - 1, c, d_sign);
  std::vector<CycloElem> gens;
  for (int m = 0; m < c.d; ++m) {
    auto coef = vbar_power(m, c);
    CycloElem g = CycloElem::zero(c);
    for (int n = 0; n <= m; ++n) g += coef[n] * vals[n];
    if (!g.in_O()) throw FkbError("generator " + std::to_string(m) + " is not in O: " + g.to_string());
    gens.push_back(g);
  }
  return gens;
}

// Power of -i that moves x into O+ (0 or 1); -1 if neither x nor -ix is in O+.
inline int plus_twist(const CycloElem& x) {
  if (in_ring(x, Ring::Oplus)) return 0;
  if (in_ring(x * -CycloElem::imag_unit(x.ctx()), Ring::Oplus)) return 1;
  return -1;
}

struct FkbResult {
  std::vector<CycloElem> raw;
  std::vector<int> twist;  // per generator, the power of -i applied
  std::vector<CycloElem> gens;
  IdealLattice ideal;
};

// With plus (p = 1 mod 4) each generator is first twisted into O+ and the
// ideal is formed there; otherwise the ideal lives in O.
inline FkbResult fkb_ideal(const KnotInSolidTorus& N, const PrimeContext& c, bool plus, int d_sign = 1) {
  FkbResult r;
  r.raw = fkb_generators(N, c, d_sign);
  const bool twisted = plus && c.p % 4 == 1;
  for (const auto& g : r.raw) {
    int t = twisted ? plus_twist(g) : 0;
    if (t < 0) throw FkbError("generator lies in neither O+ nor iO+: " + g.to_string());
    r.twist.push_back(t);
    r.gens.push_back(t ? g * -CycloElem::imag_unit(c) : g);
  }
  r.ideal = IdealLattice::from_generators(r.gens, c, twisted ? Ring::Oplus : Ring::O);
  return r;
}

// True when the value of M is outside the ideal, so N cannot sit inside M.
inline bool embedding_obstruction(const IdealLattice& ideal, const CycloElem& m_value) { return !ideal.contains(m_value); }

}  // namespace so3

#endif
