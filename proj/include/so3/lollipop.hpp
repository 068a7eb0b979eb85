// Lollipop trees, small colorings and the exponent bookkeeping of the
// integral bases.
#ifndef SO3_LOLLIPOP_HPP
#define SO3_LOLLIPOP_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace so3 {

struct TreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EdgeKind { Loop, Stick, Ordinary, Point, Stub };

inline const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Loop: return "loop";
    case EdgeKind::Stick: return "stick";
    case EdgeKind::Ordinary: return "ordinary";
    case EdgeKind::Point: return "point";
    case EdgeKind::Stub: return "stub";
  }
  return "?";
}

// Point edges end at a univalent vertex carrying a colored boundary point;
// a stub is a color-0 leaf used only when the genus-one tree has no points.
struct TreeEdge {
  EdgeKind kind;
  int u, v;
  int fixed = -1;  // point color (Point) or 0 (Stub)
  int hole = -1;   // for Loop and Stick edges
};

struct LollipopTree {
  int g = 0;
  std::vector<int> points;
  int nverts = 0;
  std::vector<TreeEdge> edges;
  // per vertex: incident edges in cyclic order (a loop edge appears twice)
  std::vector<std::vector<int>> around;
  std::vector<int> loop_edge, stick_edge, loop_vertex;
  int trunk = -1;  // edge id, -1 when there are no points

  int s() const { return (int)points.size(); }

  int add_vertex() {
    around.emplace_back();
    return nverts++;
  }
  int add_edge(EdgeKind k, int u, int v, int fixed = -1, int hole = -1) {
    edges.push_back({k, u, v, fixed, hole});
    int id = (int)edges.size() - 1;
    around[u].push_back(id);
    around[v].push_back(id);
    return id;
  }
  int other(int e, int v) const { return edges[e].u == v ? edges[e].v : edges[e].u; }

  void validate() const {
    if (g < 0) throw TreeError("negative genus");
    if (nverts == 0) {
      if (g || !points.empty() || !edges.empty()) throw TreeError("empty tree with data");
      return;
    }
    if ((int)loop_edge.size() != g || (int)stick_edge.size() != g) throw TreeError("hole bookkeeping mismatch");
    int loops = 0, npts = 0;
    for (const auto& e : edges) {
      if (e.kind == EdgeKind::Loop) {
        ++loops;
        if (e.u != e.v) throw TreeError("loop edge must be a self loop");
      } else if (e.u == e.v) {
        throw TreeError("self loop that is not a loop edge");
      }
      if (e.kind == EdgeKind::Point) ++npts;
    }
    if (loops != g || npts != s()) throw TreeError("edge counts do not match genus / points");
    for (int v = 0; v < nverts; ++v) {
      size_t deg = around[v].size();
      if (deg != 1 && deg != 3) throw TreeError("vertex of degree " + std::to_string(deg));
    }
    // removing loops leaves a tree
    int tree_edges = (int)edges.size() - loops;
    if (tree_edges != nverts - 1) throw TreeError("complement of the loops is not a tree");
    std::vector<int> seen(nverts, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int e : around[v]) {
        int w = other(e, v);
        if (!seen[w]) seen[w] = 1, st.push_back(w);
      }
    }
    if (std::count(seen.begin(), seen.end(), 0)) throw TreeError("tree is disconnected");
    for (int i = 0; i < g; ++i) {
      const auto& st_e = edges[stick_edge[i]];
      if (st_e.u != loop_vertex[i] && st_e.v != loop_vertex[i]) throw TreeError("stick not incident with its loop");
    }
    if (s() > 0 && trunk < 0 && g > 0) throw TreeError("missing trunk");
  }
};

namespace detail {

// Builds the loops and the stick caterpillar for holes [h0, h0+g).  Returns
// the vertex that still needs one edge, and sets *hole_of_link to the hole
// whose stick that edge is (genus one) or -1.
inline int loop_side(LollipopTree& t, int g, int h0, int* hole_of_link) {
  for (int i = 0; i < g; ++i) {
    int u = t.add_vertex();
    t.loop_vertex[h0 + i] = u;
    t.loop_edge[h0 + i] = t.add_edge(EdgeKind::Loop, u, u, -1, h0 + i);
  }
  *hole_of_link = -1;
  if (g == 1) {
    *hole_of_link = h0;
    return t.loop_vertex[h0];
  }
  int x = t.add_vertex();
  t.stick_edge[h0] = t.add_edge(EdgeKind::Stick, t.loop_vertex[h0], x, -1, h0);
  t.stick_edge[h0 + 1] = t.add_edge(EdgeKind::Stick, t.loop_vertex[h0 + 1], x, -1, h0 + 1);
  for (int i = 2; i < g; ++i) {
    int y = t.add_vertex();
    t.add_edge(EdgeKind::Ordinary, x, y);
    t.stick_edge[h0 + i] = t.add_edge(EdgeKind::Stick, t.loop_vertex[h0 + i], y, -1, h0 + i);
    x = y;
  }
  return x;
}

// Caterpillar on the points; for s >= 2 returns the vertex needing the
// trunk, for s == 1 returns -1 (the trunk is the point edge itself).
inline int point_side(LollipopTree& t, const std::vector<int>& pts) {
  const int s = (int)pts.size();
  if (s < 2) return -1;
  int prev = t.add_vertex();
  t.add_edge(EdgeKind::Point, prev, t.add_vertex(), pts[0]);
  t.add_edge(EdgeKind::Point, prev, t.add_vertex(), pts[1]);
  for (int k = 2; k < s; ++k) {
    int w = t.add_vertex();
    t.add_edge(EdgeKind::Ordinary, prev, w);
    t.add_edge(EdgeKind::Point, w, t.add_vertex(), pts[k]);
    prev = w;
  }
  return prev;
}

// Links vertex `from` (needing one edge) to the point side.
inline void attach_points(LollipopTree& t, int from, int hole_of_link, const std::vector<int>& pts) {
  if (pts.size() == 1) {
    t.trunk = t.add_edge(EdgeKind::Point, from, t.add_vertex(), pts[0], hole_of_link);
  } else {
    int w = point_side(t, pts);
    t.trunk = t.add_edge(hole_of_link >= 0 ? EdgeKind::Stick : EdgeKind::Ordinary, from, w, -1, hole_of_link);
  }
  if (hole_of_link >= 0) t.stick_edge[hole_of_link] = t.trunk;
}

inline LollipopTree empty_tree(int g, const std::vector<int>& pts) {
  LollipopTree t;
  t.g = g;
  t.points = pts;
  t.loop_edge.assign(g, -1);
  t.stick_edge.assign(g, -1);
  t.loop_vertex.assign(g, -1);
  return t;
}

}  // namespace detail

// The preset tree used throughout: loops hang off a caterpillar of sticks
// whose output edge is the trunk; the points hang off a second caterpillar.
inline LollipopTree canonical_tree(int g, const std::vector<int>& points) {
  if (g < 0) throw TreeError("negative genus");
  LollipopTree t = detail::empty_tree(g, points);
  const int s = (int)points.size();
  if (g == 0) {
    if (s == 0) return t;
    if (s <= 2) {
      // one trivalent vertex padded with color-0 stubs
      int m = t.add_vertex();
      for (int k = 0; k < s; ++k) t.add_edge(EdgeKind::Point, m, t.add_vertex(), points[k]);
      for (int k = s; k < 3; ++k) t.add_edge(EdgeKind::Stub, m, t.add_vertex(), 0);
      return t;
    }
    std::vector<int> head(points.begin(), points.end() - 1);
    int w = detail::point_side(t, head);
    t.add_edge(EdgeKind::Point, w, t.add_vertex(), points.back());
    return t;
  }
  if (g == 2 && s == 0) {
    for (int i = 0; i < 2; ++i) {
      int u = t.add_vertex();
      t.loop_vertex[i] = u;
      t.loop_edge[i] = t.add_edge(EdgeKind::Loop, u, u, -1, i);
    }
    int e = t.add_edge(EdgeKind::Stick, t.loop_vertex[0], t.loop_vertex[1], -1, 0);
    t.stick_edge[0] = t.stick_edge[1] = e;
    return t;
  }
  if (s == 0) {
    if (g == 1) {
      int hole;
      int u = detail::loop_side(t, 1, 0, &hole);
      t.stick_edge[0] = t.add_edge(EdgeKind::Stick, u, t.add_vertex(), 0, 0);
      return t;
    }
    // the last stick closes the caterpillar
    int hole;
    int x = detail::loop_side(t, g - 1, 0, &hole);
    int u = t.add_vertex();
    t.loop_vertex[g - 1] = u;
    t.loop_edge[g - 1] = t.add_edge(EdgeKind::Loop, u, u, -1, g - 1);
    if (g - 1 == 1) {
      // g = 2 handled above
      throw TreeError("unreachable");
    }
    t.stick_edge[g - 1] = t.add_edge(EdgeKind::Stick, u, x, -1, g - 1);
    return t;
  }
  int hole;
  int out = detail::loop_side(t, g, 0, &hole);
  detail::attach_points(t, out, hole, points);
  return t;
}

// Grafting along trunks: the loop sides of the parts keep their shapes, the
// part trunks meet along a caterpillar whose output is the new trunk, and
// the points of all parts sit on a single point side.
inline LollipopTree graft(const std::vector<LollipopTree>& parts) {
  if (parts.size() < 2) throw TreeError("graft: need at least two parts");
  int g = 0;
  std::vector<int> pts;
  for (const auto& p : parts) {
    if (p.g == 0) throw TreeError("graft: every part needs a loop");
    g += p.g;
    pts.insert(pts.end(), p.points.begin(), p.points.end());
  }
  LollipopTree t = detail::empty_tree(g, pts);
  std::vector<std::pair<int, int>> outs;  // (vertex, hole_of_link)
  int h0 = 0;
  for (const auto& p : parts) {
    int hole;
    int v = detail::loop_side(t, p.g, h0, &hole);
    outs.push_back({v, hole});
    h0 += p.g;
  }
  auto link = [&](std::pair<int, int> o, int to) {
    int id = t.add_edge(o.second >= 0 ? EdgeKind::Stick : EdgeKind::Ordinary, o.first, to, -1, o.second);
    if (o.second >= 0) t.stick_edge[o.second] = id;
  };
  const int n = (int)outs.size();
  const int last = pts.empty() ? n - 1 : n;
  int y = t.add_vertex();
  link(outs[0], y);
  link(outs[1], y);
  for (int i = 2; i < last; ++i) {
    int z = t.add_vertex();
    t.add_edge(EdgeKind::Ordinary, y, z);
    link(outs[i], z);
    y = z;
  }
  if (pts.empty()) {
    link(outs[n - 1], y);
  } else {
    detail::attach_points(t, y, -1, pts);
  }
  t.validate();
  return t;
}

struct SmallColoring {
  std::vector<int> a, b;
  std::vector<int> color;  // per edge
  int e = 0;
  int A() const { return std::accumulate(a.begin(), a.end(), 0); }
  bool odd() const { return A() % 2 != 0; }
  int loop_color(int i) const { return a[i] + b[i]; }
  friend bool operator==(const SmallColoring& x, const SmallColoring& y) { return x.color == y.color; }
  friend bool operator<(const SmallColoring& x, const SmallColoring& y) { return x.color < y.color; }
};

inline bool admissible_triple(int x, int y, int z, int p) {
  if (x < 0 || y < 0 || z < 0) return false;
  if ((x + y + z) % 2) return false;
  if (x > y + z || y > x + z || z > x + y) return false;
  return x + y + z <= 2 * p - 4;
}

// Visits every (a, c) fiber: colorings of the non-loop edges.  The
// callback receives the per-edge colors with loop edges left at -1.
inline void for_each_fiber(const LollipopTree& t, int p, const std::function<void(const std::vector<int>&)>& f) {
  const int d = (p - 1) / 2;
  const int E = (int)t.edges.size();
  std::vector<int> col(E, -1);
  for (int e = 0; e < E; ++e)
    if (t.edges[e].fixed >= 0) col[e] = t.edges[e].fixed;
  for (int e = 0; e < E; ++e)
    if (t.edges[e].kind == EdgeKind::Point && (col[e] < 0 || col[e] > p - 2))
      throw TreeError("point color out of range");
  // order free edges by BFS so that vertices complete early
  std::vector<int> order, seen_e(E, 0), seen_v(t.nverts, 0);
  std::queue<int> q;
  if (t.nverts) q.push(0), seen_v[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : t.around[v]) {
      if (seen_e[e]) continue;
      seen_e[e] = 1;
      if (t.edges[e].kind != EdgeKind::Loop && col[e] < 0) order.push_back(e);
      int w = t.other(e, v);
      if (!seen_v[w]) seen_v[w] = 1, q.push(w);
    }
  }
  // vertex checks ignore loops (a loop color in [a, d-1] always fits)
  auto vertex_ok = [&](int v, bool complete_only) {
    const auto& ar = t.around[v];
    if (ar.size() != 3) return true;
    int c[3];
    for (int k = 0; k < 3; ++k) {
      int e = ar[k];
      if (t.edges[e].kind == EdgeKind::Loop) return true;
      c[k] = col[e];
      if (c[k] < 0) return !complete_only ? true : true;
    }
    return admissible_triple(c[0], c[1], c[2], p);
  };
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == order.size()) {
      for (int v = 0; v < t.nverts; ++v)
        if (!vertex_ok(v, true)) return;
      f(col);
      return;
    }
    int e = order[k];
    const auto& ed = t.edges[e];
    const bool stick = ed.kind == EdgeKind::Stick;
    for (int c = 0; c <= p - 2; ++c) {
      if (stick && (c % 2 || c / 2 > d - 1)) continue;
      col[e] = c;
      if (vertex_ok(ed.u, false) && vertex_ok(ed.v, false)) rec(k + 1);
    }
    col[e] = -1;
  };
  // fixed sticks (stub) must satisfy the stick rule too
  rec(0);
}

inline int trunk_half_color(const LollipopTree& t, const std::vector<int>& col) {
  if (t.trunk < 0) return 0;
  return col[t.trunk] / 2;
}

inline std::vector<int> stick_halves(const LollipopTree& t, const std::vector<int>& col) {
  std::vector<int> a(t.g);
  for (int i = 0; i < t.g; ++i) a[i] = col[t.stick_edge[i]] / 2;
  return a;
}

inline bool fiber_valid(const LollipopTree& t, const std::vector<int>& col, int p) {
  const int d = (p - 1) / 2;
  for (int i = 0; i < t.g; ++i) {
    int c = col[t.stick_edge[i]];
    if (c % 2 || c / 2 > d - 1) return false;
  }
  if (t.trunk >= 0 && col[t.trunk] % 2) return false;
  return true;
}

// Canonical enumeration order: fibers in DFS order, then b lexicographic.
inline std::vector<SmallColoring> enumerate_small_colorings(const LollipopTree& t, int p) {
  t.validate();
  const int d = (p - 1) / 2;
  std::vector<SmallColoring> out;
  if (t.g == 0 && t.edges.empty()) {
    out.push_back({});
    return out;
  }
  for_each_fiber(t, p, [&](const std::vector<int>& col) {
    if (!fiber_valid(t, col, p)) return;
    SmallColoring base;
    base.a = stick_halves(t, col);
    base.e = trunk_half_color(t, col);
    base.b.assign(t.g, 0);
    base.color = col;
    std::function<void(int)> rec = [&](int i) {
      if (i == t.g) {
        for (int j = 0; j < t.g; ++j) base.color[t.loop_edge[j]] = base.a[j] + base.b[j];
        out.push_back(base);
        return;
      }
      for (int bi = 0; bi <= d - 1 - base.a[i]; ++bi) {
        base.b[i] = bi;
        rec(i + 1);
      }
    };
    rec(0);
  });
  return out;
}

inline int floor_half(int x) { return (x >= 0) ? x / 2 : -((-x + 1) / 2); }
inline int ceil_half(int x) { return -floor_half(-x); }

inline int exponent_b(const SmallColoring& c) {
  int sb = std::accumulate(c.b.begin(), c.b.end(), 0);
  return sb + floor_half(c.A() - c.e);
}
inline int exponent_bsharp(const SmallColoring& c) {
  int sb = std::accumulate(c.b.begin(), c.b.end(), 0);
  return sb + ceil_half(c.A() + c.e);
}
// b♯ = h^{-n} b
inline int sharp_shift(const SmallColoring& c) { return c.e + ((c.A() - c.e) % 2 != 0 ? 1 : 0); }

struct FiberSums {
  long long count = 0, N = 0, Nsharp = 0;
};

// Count and exponent sums without listing the b's.
inline FiberSums fiber_sums(const LollipopTree& t, int p) {
  t.validate();
  const int d = (p - 1) / 2;
  FiberSums r;
  if (t.g == 0 && t.edges.empty()) {
    r.count = 1;
    return r;
  }
  for_each_fiber(t, p, [&](const std::vector<int>& col) {
    if (!fiber_valid(t, col, p)) return;
    auto a = stick_halves(t, col);
    int e = trunk_half_color(t, col);
    int A = std::accumulate(a.begin(), a.end(), 0);
    long long size = 1;
    for (int x : a) size *= (d - x);
    long long sumb = 0;  // sum over the fiber of sum_i b_i
    for (int i = 0; i < t.g; ++i) sumb += size / (d - a[i]) * ((long long)(d - a[i]) * (d - a[i] - 1) / 2);
    r.count += size;
    r.N += sumb + size * floor_half(A - e);
    r.Nsharp += sumb + size * ceil_half(A + e);
  });
  return r;
}

struct IndexIdentity {
  long long N = 0, Nsharp = 0, rhs = 0, dim = 0;
  bool holds = false;
};

inline IndexIdentity index_identity(const LollipopTree& t, int p) {
  const int d = (p - 1) / 2;
  FiberSums f = fiber_sums(t, p);
  IndexIdentity r;
  r.N = f.N;
  r.Nsharp = f.Nsharp;
  r.dim = f.count;
  r.rhs = (long long)t.g * (d - 1) * f.count;
  r.holds = r.N + r.Nsharp == r.rhs;
  return r;
}

inline int oddity(const SmallColoring& c, int p) {
  const int d = (p - 1) / 2;
  return (c.e == d - 1 && (c.A() - c.e) % 2 != 0) ? 1 : 0;
}

inline int tensor_rescale_exponent(const std::vector<int>& oddities) {
  int s = 0;
  for (int x : oddities) {
    if (x != 0 && x != 1) throw std::invalid_argument("oddity must be 0 or 1");
    s += x;
  }
  return s / 2;
}

// (A, e) data of a coloring, enough for the grafting exponent.
struct TrunkData {
  int A = 0, e = 0;
};

inline int grafting_exponent(const TrunkData& whole, const std::vector<TrunkData>& parts, int p) {
  const int d = (p - 1) / 2;
  const int n = (int)parts.size();
  if (n < 2) throw std::invalid_argument("grafting needs at least two parts");
  int E = (n - 1) * (d - 1) - floor_half(whole.A - whole.e);
  for (const auto& x : parts) E += floor_half(x.A - x.e);
  return E;
}

}  // namespace so3

#endif
