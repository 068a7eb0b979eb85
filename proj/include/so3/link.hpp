// Framed links given by PD codes.
//
// A crossing X a b c d lists arc labels counterclockwise starting from the
// incoming under strand: a -> c is under, b and d are over.  It is
// positive when the over strand runs d -> b.  Slot i of the diagram
// crossing is PD position i, so the ColoredDiagram convention is the same.
//
// Framings are total framings (self-linking numbers); the writhe of the
// drawn component is corrected with curls on its seed arc.
#ifndef SO3_LINK_HPP
#define SO3_LINK_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "so3/diagram.hpp"

namespace so3 {

enum class Role { Surgery, Cargo, Axis };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::Surgery: return "surgery";
    case Role::Cargo: return "cargo";
    case Role::Axis: return "axis";
  }
  return "?";
}

struct LinkComponent {
  std::string name;
  Role role = Role::Surgery;
  int framing = 0;
  int color = 1;
  int seed_arc = -1;  // -1: a free unknot drawn without crossings
  friend bool operator==(const LinkComponent&, const LinkComponent&) = default;
};

struct PDLink {
  std::vector<std::array<int, 4>> crossings;
  std::vector<LinkComponent> comps;
  std::vector<std::string> header;  // comment lines, kept for round trips

  int find(const std::string& name) const {
    for (size_t i = 0; i < comps.size(); ++i)
      if (comps[i].name == name) return (int)i;
    return -1;
  }
  friend bool operator==(const PDLink& a, const PDLink& b) {
    return a.crossings == b.crossings && a.comps == b.comps;
  }
};

// Mirror image of the link: over and under swap and framings change sign.
inline PDLink mirror(const PDLink& L) {
  PDLink m = L;
  for (auto& x : m.crossings) x = {x[1], x[2], x[3], x[0]};
  for (auto& c : m.comps) c.framing = -c.framing;
  return m;
}

// Split union: the second link is drawn beside the first.
inline PDLink disjoint_union(const PDLink& a, const PDLink& b) {
  int shift = 0;
  for (const auto& x : a.crossings)
    for (int v : x) shift = std::max(shift, v + 1);
  PDLink u = a;
  for (auto x : b.crossings) {
    for (int& v : x) v += shift;
    u.crossings.push_back(x);
  }
  for (auto c : b.comps) {
    if (c.seed_arc >= 0) c.seed_arc += shift;
    u.comps.push_back(c);
  }
  return u;
}

// Adds |k| curls of sign k on segment s.
inline void add_curls(ColoredDiagram& dg, int s, int k) {
  for (int t = 0; t < std::abs(k); ++t) {
    const int c = dg.segs[s].color;
    const int nd = dg.add_node(NodeKind::Crossing, 4);
    const int loop = dg.add_segment(c);
    const int in_slot = k > 0 ? 2 : 3, out_slot = k > 0 ? 3 : 0;
    dg.attach(loop, 0, nd, k > 0 ? 0 : 1);
    dg.attach(loop, 1, nd, k > 0 ? 1 : 2);
    if (dg.segs[s].closed) {
      dg.segs[s].closed = false;
      dg.attach(s, 1, nd, in_slot);
      dg.attach(s, 0, nd, out_slot);
      continue;
    }
    const NodeAttach far = dg.segs[s].end[1];
    const int rest = dg.add_segment(c);
    dg.attach(s, 1, nd, in_slot);
    dg.attach(rest, 0, nd, out_slot);
    dg.attach(rest, 1, far.node, far.slot);
  }
}

// The link drawn once with color-0 components; colorings reuse it.
struct LinkLayout {
  ColoredDiagram base;
  std::vector<int> comp_of_seg;
  std::vector<int> seed_seg;
  std::vector<std::vector<long>> linking;  // diagonal: writhe
  std::vector<int> crossing_sign;
};

inline LinkLayout layout_link(const PDLink& L) {
  LinkLayout out;
  auto& dg = out.base;
  std::map<int, std::vector<NodeAttach>> occ;
  for (size_t x = 0; x < L.crossings.size(); ++x) {
    dg.add_node(NodeKind::Crossing, 4);
    for (int k = 0; k < 4; ++k) occ[L.crossings[x][k]].push_back({(int)x, k});
  }
  std::map<int, int> seg_of_arc;
  for (const auto& [arc, where] : occ) {
    if (where.size() != 2) throw DiagramError("PD arc " + std::to_string(arc) + " occurs " + std::to_string(where.size()) + " times");
    int s = dg.add_segment(0);
    dg.attach(s, 0, where[0].node, where[0].slot);
    dg.attach(s, 1, where[1].node, where[1].slot);
    seg_of_arc[arc] = s;
  }
  const int n = (int)L.comps.size();
  out.comp_of_seg.assign(dg.segs.size(), -1);
  out.seed_seg.assign(n, -1);
  const int nx = (int)L.crossings.size();
  std::vector<int> under_in(nx, -1), over_in(nx, -1), under_comp(nx, -1), over_comp(nx, -1);
  for (int i = 0; i < n; ++i) {
    const auto& c = L.comps[i];
    if (c.seed_arc < 0) {
      int s = dg.add_closed(0);
      out.comp_of_seg.push_back(i);
      out.seed_seg[i] = s;
      continue;
    }
    auto it = seg_of_arc.find(c.seed_arc);
    if (it == seg_of_arc.end()) throw DiagramError("component " + c.name + ": unknown arc " + std::to_string(c.seed_arc));
    const int start = it->second;
    if (out.comp_of_seg[start] >= 0) throw DiagramError("component " + c.name + " repeats another component");
    out.seed_seg[i] = start;
    int s = start, side = 1;
    for (;;) {
      out.comp_of_seg[s] = i;
      const NodeAttach at = dg.segs[s].end[side];
      if (at.slot % 2 == 0) {
        under_in[at.node] = at.slot;
        under_comp[at.node] = i;
      } else {
        over_in[at.node] = at.slot;
        over_comp[at.node] = i;
      }
      const EndRef nx_end = dg.nodes[at.node].ends[(at.slot + 2) % 4];
      s = nx_end.seg;
      side = 1 - nx_end.side;
      if (s == start) {
        if (side != 1) throw DiagramError("component " + c.name + " is not consistently oriented");
        break;
      }
    }
  }
  for (size_t s = 0; s < out.comp_of_seg.size(); ++s)
    if (out.comp_of_seg[s] < 0) throw DiagramError("PD arc outside every declared component");
  out.linking.assign(n, std::vector<long>(n, 0));
  out.crossing_sign.assign(nx, 0);
  std::vector<std::vector<long>> twice(n, std::vector<long>(n, 0));
  for (int x = 0; x < nx; ++x) {
    const bool pos = (under_in[x] == 0 && over_in[x] == 3) || (under_in[x] == 2 && over_in[x] == 1);
    const int sg = pos ? 1 : -1;
    out.crossing_sign[x] = sg;
    const int a = under_comp[x], b = over_comp[x];
    if (a == b) {
      twice[a][a] += 2 * sg;
    } else {
      twice[a][b] += sg;
      twice[b][a] += sg;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (twice[i][j] % 2) throw DiagramError("odd crossing count between two components");
      out.linking[i][j] = twice[i][j] / 2;
    }
  return out;
}

// The framing matrix: linking numbers off the diagonal, framings on it.
inline std::vector<std::vector<long>> framing_matrix(const PDLink& L, const LinkLayout& lay) {
  auto m = lay.linking;
  for (size_t i = 0; i < m.size(); ++i) m[i][i] = L.comps[i].framing;
  return m;
}

// Colors each component and adds the curls that bring its writhe to its
// framing.  colors[i] < 0 keeps the component's own color.
inline ColoredDiagram color_link(const PDLink& L, const LinkLayout& lay, const std::vector<int>& colors) {
  ColoredDiagram dg = lay.base;
  auto color_of = [&](int i) { return (i < (int)colors.size() && colors[i] >= 0) ? colors[i] : L.comps[i].color; };
  for (size_t s = 0; s < dg.segs.size(); ++s) dg.segs[s].color = color_of(lay.comp_of_seg[s]);
  for (size_t i = 0; i < L.comps.size(); ++i) add_curls(dg, lay.seed_seg[i], L.comps[i].framing - (int)lay.linking[i][i]);
  dg.validate();
  return dg;
}

// Counts of positive and negative eigenvalues of a symmetric integer
// matrix, by congruence diagonalization over Q.
inline std::pair<int, int> signature_counts(const std::vector<std::vector<long>>& m) {
  const int n = (int)m.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  auto add_to = [&](int dst, int src, const mpq_class& f) {
    for (int k = 0; k < n; ++k) a[dst][k] += f * a[src][k];
    for (int k = 0; k < n; ++k) a[k][dst] += f * a[k][src];
  };
  int pos = 0, neg = 0;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int j = k + 1; j < n && piv < 0; ++j)
        if (a[j][j] != 0) piv = j;
      if (piv >= 0) {
        std::swap(a[k], a[piv]);
        for (auto& row : a) std::swap(row[k], row[piv]);
      } else {
        for (int j = k + 1; j < n && piv < 0; ++j)
          if (a[k][j] != 0) piv = j;
        if (piv < 0) continue;
        add_to(k, piv, 1);
      }
    }
    const mpq_class pv = a[k][k];
    for (int j = k + 1; j < n; ++j)
      if (a[j][k] != 0) add_to(j, k, -a[j][k] / pv);
    (pv > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

}  // namespace so3

#endif
