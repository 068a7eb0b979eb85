// Coordinates over the small graph basis, z-multiplication, the bases B
// and B#, Gram matrices and the mod-h forms.
#ifndef SO3_LATTICE_HPP
#define SO3_LATTICE_HPP

#include <map>
#include <random>

#include "so3/lollipop.hpp"
#include "so3/recoupling.hpp"

namespace so3 {

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Small graph basis of V_p for a fixed tree, in canonical enumeration order.
struct Basis {
  LollipopTree tree;
  const PrimeContext* ctx = nullptr;
  std::vector<SmallColoring> cols;
  std::map<std::vector<int>, int> index;  // edge colors -> position

  int size() const { return (int)cols.size(); }
  int find(const std::vector<int>& color) const {
    auto it = index.find(color);
    return it == index.end() ? -1 : it->second;
  }
  // the coloring with every loop lowered to its stick half-color
  int base_of(const SmallColoring& c) const {
    auto col = c.color;
    for (int i = 0; i < tree.g; ++i) col[tree.loop_edge[i]] = c.a[i];
    return find(col);
  }
};

inline Basis make_basis(const LollipopTree& t, const PrimeContext& ctx) {
  Basis b;
  b.tree = t;
  b.ctx = &ctx;
  b.cols = enumerate_small_colorings(t, ctx.p);
  for (int i = 0; i < b.size(); ++i) b.index.emplace(b.cols[i].color, i);
  return b;
}

struct HandlebodyVector {
  const Basis* basis = nullptr;
  CVector coords;

  static HandlebodyVector zero(const Basis& b) { return {&b, CVector(b.size(), CycloElem::zero(*b.ctx))}; }
  static HandlebodyVector unit(const Basis& b, int i) {
    auto v = zero(b);
    v.coords.at(i) = CycloElem::one(*b.ctx);
    return v;
  }
  HandlebodyVector& operator+=(const HandlebodyVector& o) {
    for (size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  friend HandlebodyVector operator+(HandlebodyVector a, const HandlebodyVector& b) { return a += b; }
  friend HandlebodyVector operator*(const CycloElem& s, HandlebodyVector v) {
    for (auto& x : v.coords)
      if (!x.is_zero()) x *= s;
    return v;
  }
  friend bool operator==(const HandlebodyVector& a, const HandlebodyVector& b) { return a.coords == b.coords; }
};

namespace detail {

// Morse layout of a tree drawn from a root edge: the root is a cup and each
// vertex splits the incoming strand.  Only depends on the tree.
struct TreeOp {
  bool cup;
  int pos;
  int edge;       // root edge (cup) or incoming edge (split)
  int el, er;     // outgoing edges of a split
};

enum : int { kTagOL = 1, kTagOR = 2, kTagRa = 3, kTagRb = 4 };
inline int tag_la(int i) { return 100 + i; }
inline int tag_lb(int i) { return 200 + i; }
inline int tag_m1(int i) { return 300 + i; }
inline int tag_m2(int i) { return 400 + i; }
inline int tag_point(int e) { return 1000 + e; }
inline int tag_z(int i, int j, int side) { return 100000 + i * 1000 + 2 * j + side; }

struct TreeLayout {
  std::vector<TreeOp> ops;
  std::vector<int> row;  // tags after the tree is drawn
};

inline int root_edge(const LollipopTree& t) {
  if (t.edges.empty()) return -1;
  if (t.trunk >= 0) return t.trunk;
  if (t.g > 0) return t.stick_edge[t.g - 1];
  return 0;
}

inline TreeLayout layout_tree(const LollipopTree& t) {
  TreeLayout L;
  const int r = root_edge(t);
  if (r < 0) return L;
  std::vector<int> hole_at(t.nverts, -1);
  for (int i = 0; i < t.g; ++i) hole_at[t.loop_vertex[i]] = i;
  std::function<void(int, int, int)> descend = [&](int e, int v, int pos) {
    if (t.around[v].size() == 1) {
      L.row[pos] = tag_point(e);
      return;
    }
    if (hole_at[v] >= 0) {
      int i = hole_at[v];
      L.ops.push_back({false, pos, e, t.loop_edge[i], t.loop_edge[i]});
      L.row[pos] = tag_la(i);
      L.row.insert(L.row.begin() + pos + 1, tag_lb(i));
      return;
    }
    const auto& ar = t.around[v];
    int j = (int)(std::find(ar.begin(), ar.end(), e) - ar.begin());
    int left = ar[(j + 1) % 3], right = ar[(j + 2) % 3];
    L.ops.push_back({false, pos, e, left, right});
    L.row.insert(L.row.begin() + pos + 1, 0);
    descend(right, t.other(right, v), pos + 1);
    descend(left, t.other(left, v), pos);
  };
  L.ops.push_back({true, 0, r, -1, -1});
  L.row = {0, 0};
  descend(r, t.edges[r].v, 1);
  descend(r, t.edges[r].u, 0);
  return L;
}

// MorseBuilder with a tag per open strand.
class TaggedRow {
 public:
  int pos(int tag) const {
    auto it = std::find(tag_.begin(), tag_.end(), tag);
    if (it == tag_.end()) throw LatticeError("layout: missing strand");
    return (int)(it - tag_.begin());
  }
  void cup(int pos, int c, int ta, int tb) {
    mb_.cup(pos, c);
    tag_.insert(tag_.begin() + pos, {ta, tb});
  }
  void cap(int pos) {
    mb_.cap(pos);
    tag_.erase(tag_.begin() + pos, tag_.begin() + pos + 2);
  }
  void cross(int pos, bool left_over) {
    mb_.cross(pos, left_over);
    std::swap(tag_[pos], tag_[pos + 1]);
  }
  void split(int pos, int cl, int cr) {
    mb_.split(pos, cl, cr);
    tag_.insert(tag_.begin() + pos + 1, 0);
  }
  void merge(int pos, int c) {
    mb_.merge(pos, c);
    tag_.erase(tag_.begin() + pos + 1);
  }
  void set_tags(int from, const std::vector<int>& tags) {
    for (size_t k = 0; k < tags.size(); ++k) tag_.at(from + k) = tags[k];
  }
  // a 0-framed circle of color k linking strands lo..hi once each
  void ring(int lo, int hi, int k) {
    cup(lo, k, kTagRa, kTagRb);
    for (int j = lo + 1; j <= hi + 1; ++j) cross(j, true);
    for (int j = hi + 1; j >= lo + 1; --j) cross(j, true);
    cap(lo);
  }
  ColoredDiagram build() { return mb_.build(); }

 private:
  MorseBuilder mb_;
  std::vector<int> tag_;
};

inline void draw_tree(TaggedRow& row, const TreeLayout& L, const std::vector<int>& col, int offset) {
  for (const auto& op : L.ops) {
    if (op.cup)
      row.cup(offset + op.pos, col[op.edge], 0, 0);
    else
      row.split(offset + op.pos, col[op.el], col[op.er]);
  }
  row.set_tags(offset, L.row);
}

inline void undraw_tree(TaggedRow& row, const TreeLayout& L, const std::vector<int>& col, int offset) {
  for (auto it = L.ops.rbegin(); it != L.ops.rend(); ++it) {
    if (it->cup)
      row.cap(offset + it->pos);
    else
      row.merge(offset + it->pos, col[it->edge]);
  }
}

}  // namespace detail

// Extra curves placed in the x half of a pairing diagram.
struct PairingExtras {
  std::vector<int> inner_z;  // per hole, circles just around the hole
  bool outer = false;        // one circle around both holes (genus 2, no points)
};

// The pairing diagram: x = the graph colored xcol plus extras, then for each
// hole a ring of color ring[i] (0 = absent) linking x and the mirror of the
// graph colored ycol once each.
inline ColoredDiagram pairing_diagram(const LollipopTree& t, const std::vector<int>& xcol,
                                      const std::vector<int>& ycol, const std::vector<int>& ring,
                                      const PairingExtras& ex = {}) {
  using namespace detail;
  if (ex.outer && (t.g != 2 || t.s() != 0)) throw LatticeError("outer circle needs genus 2 without points");
  const TreeLayout L = layout_tree(t);
  TaggedRow row;
  const int off = ex.outer ? 1 : 0;
  if (ex.outer) row.cup(0, 1, kTagOL, kTagOR);
  draw_tree(row, L, xcol, off);
  for (int i = 0; i < t.g; ++i) {
    const int nz = ex.inner_z.empty() ? 0 : ex.inner_z.at(i);
    for (int j = 0; j < nz; ++j) row.cup(row.pos(j ? tag_z(i, j - 1, 1) : tag_lb(i)), 1, tag_z(i, j, 0), tag_z(i, j, 1));
    const int ny = ycol[t.loop_edge[i]];
    int lo, hi;
    if (ex.outer && i == 0) {
      row.cup(row.pos(kTagOL), ny, tag_m1(i), tag_m2(i));
      lo = row.pos(tag_m2(i));
      hi = nz ? row.pos(tag_z(i, nz - 1, 0)) : row.pos(tag_la(i));
    } else {
      int at = (ex.outer && i == t.g - 1) ? row.pos(kTagOR) + 1 : row.pos(tag_lb(i)) + 1;
      row.cup(at, ny, tag_m1(i), tag_m2(i));
      lo = nz ? row.pos(tag_z(i, nz - 1, 1)) : row.pos(tag_lb(i));
      hi = row.pos(tag_m1(i));
    }
    if (ring.at(i) > 0) row.ring(lo, hi, ring[i]);
    for (int j = nz - 1; j >= 0; --j) row.cap(row.pos(tag_z(i, j, 0)));
    row.cap(row.pos(tag_la(i)));
  }
  if (ex.outer) row.cap(row.pos(kTagOL));
  undraw_tree(row, L, ycol, 0);
  return row.build();
}

// (x, y) by surgery on the double: sum over ring colors weighted by omega.
inline CycloElem pairing_surgery(const LollipopTree& t, const PrimeContext& ctx, const std::vector<int>& xcol,
                                 const std::vector<int>& ycol, const PairingExtras& ex = {}) {
  const auto& om = recoupling(ctx).omega();
  CycloElem sum = CycloElem::zero(ctx);
  std::vector<int> ring(t.g, 0);
  std::function<void(int, CycloElem)> rec = [&](int i, CycloElem w) {
    if (i == t.g) {
      sum += w * bracket(pairing_diagram(t, xcol, ycol, ring, ex), ctx);
      return;
    }
    for (int k = 0; k < ctx.d; ++k) {
      if (om[k].is_zero()) continue;
      ring[i] = k;
      rec(i + 1, w * om[k]);
    }
    ring[i] = 0;
  };
  rec(0, CycloElem::one(ctx));
  return sum;
}

// Same pairing after applying the omega-ring identity by hand: matching loop
// colors n contribute D / Delta_n and the loops are rejoined; valid for loop
// colors below d.
inline CycloElem pairing_glued(const LollipopTree& t, const PrimeContext& ctx, const std::vector<int>& xcol,
                               const std::vector<int>& ycol) {
  const auto& R = recoupling(ctx);
  CycloElem coef = CycloElem::one(ctx);
  const CycloElem D = D_elem(ctx);
  for (int i = 0; i < t.g; ++i) {
    int n = xcol[t.loop_edge[i]];
    if (n != ycol[t.loop_edge[i]]) return CycloElem::zero(ctx);
    if (n >= ctx.d) throw LatticeError("glued pairing needs small loop colors");
    coef *= D / R.loop_value(n);
  }
  using namespace detail;
  const TreeLayout L = layout_tree(t);
  TaggedRow row;
  draw_tree(row, L, xcol, 0);
  undraw_tree(row, L, ycol, 0);
  return coef * bracket(row.build(), ctx);
}

// Closed form of the diagonal entry: D^g prod theta(v) / (prod Delta_loop
// prod Delta_internal).
inline CycloElem gram_closed(const LollipopTree& t, const PrimeContext& ctx, const std::vector<int>& col) {
  const auto& R = recoupling(ctx);
  CycloElem v = D_elem(ctx).pow(t.g);
  for (int i = 0; i < t.g; ++i) v /= R.loop_value(col[t.loop_edge[i]]);
  for (int x = 0; x < t.nverts; ++x) {
    const auto& ar = t.around[x];
    if (ar.size() != 3) continue;
    v *= R.theta(col[ar[0]], col[ar[1]], col[ar[2]]);
  }
  for (size_t e = 0; e < t.edges.size(); ++e) {
    const auto& ed = t.edges[e];
    if (ed.kind == EdgeKind::Loop) continue;
    if (t.around[ed.u].size() == 3 && t.around[ed.v].size() == 3) v /= R.loop_value(col[e]);
  }
  return v;
}

enum class GramMethod { Surgery, Glued, Closed };

inline const char* gram_method_name(GramMethod m) {
  switch (m) {
    case GramMethod::Surgery: return "surgery";
    case GramMethod::Glued: return "glued";
    default: return "closed";
  }
}

struct GramMatrix {
  std::vector<std::string> labels;
  CMatrix entries;
  bool plus = false;
};

inline std::string coloring_label(const SmallColoring& c) {
  std::string s = "a=(";
  for (size_t i = 0; i < c.a.size(); ++i) s += (i ? "," : "") + std::to_string(c.a[i]);
  s += ") b=(";
  for (size_t i = 0; i < c.b.size(); ++i) s += (i ? "," : "") + std::to_string(c.b[i]);
  s += ") e=" + std::to_string(c.e);
  return s;
}

inline CycloElem gram_entry(const Basis& B, int x, int y, GramMethod m) {
  const auto& cx = B.cols[x].color;
  const auto& cy = B.cols[y].color;
  switch (m) {
    case GramMethod::Surgery: return pairing_surgery(B.tree, *B.ctx, cx, cy);
    case GramMethod::Glued: return pairing_glued(B.tree, *B.ctx, cx, cy);
    default: return x == y ? gram_closed(B.tree, *B.ctx, cx) : CycloElem::zero(*B.ctx);
  }
}

// Gram matrix of the small graph basis.  Only the diagonal is evaluated
// unless full is set; the basis is orthogonal.
inline GramMatrix gram_graph(const Basis& B, GramMethod m = GramMethod::Surgery, bool full = false) {
  GramMatrix G;
  const int n = B.size();
  G.entries = cmatrix(*B.ctx, n, n);
  for (const auto& c : B.cols) G.labels.push_back(coloring_label(c));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x == y || full) G.entries[x][y] = gram_entry(B, x, y, m);
  return G;
}

inline CVector gram_diagonal(const GramMatrix& G) {
  CVector d;
  for (size_t i = 0; i < G.entries.size(); ++i) d.push_back(G.entries[i][i]);
  return d;
}

// z-multiplication at one hole.  The branch reaching loop color d is
// expressed in the small basis by pairing against every basis vector.
inline HandlebodyVector z_multiply(const HandlebodyVector& v, int hole, const CVector* gram_diag = nullptr) {
  const Basis& B = *v.basis;
  const PrimeContext& ctx = *B.ctx;
  const auto& R = recoupling(ctx);
  const auto& t = B.tree;
  if (hole < 0 || hole >= t.g) throw LatticeError("z_multiply: bad hole");
  HandlebodyVector out = HandlebodyVector::zero(B);
  CVector diag_store;
  for (int x = 0; x < B.size(); ++x) {
    if (v.coords[x].is_zero()) continue;
    const auto& c = B.cols[x];
    const int n = c.loop_color(hole), s = 2 * c.a[hole];
    for (int k : {n - 1, n + 1}) {
      if (k < 0 || !admissible(1, n, k, ctx.p) || !admissible(k, k, s, ctx.p)) continue;
      CycloElem coef = R.loop_value(k) / R.theta(1, n, k) * R.tet(1, n, k, s, k, n) / R.theta(k, k, s);
      if (coef.is_zero()) continue;
      auto col = c.color;
      col[t.loop_edge[hole]] = k;
      int y = B.find(col);
      if (y >= 0) {
        out.coords[y] += v.coords[x] * coef;
        continue;
      }
      if (!gram_diag) {
        diag_store = gram_diagonal(gram_graph(B, GramMethod::Closed));
        gram_diag = &diag_store;
      }
      for (int w = 0; w < B.size(); ++w) {
        CycloElem pr = pairing_surgery(t, ctx, col, B.cols[w].color);
        if (!pr.is_zero()) out.coords[w] += v.coords[x] * coef * pr / (*gram_diag)[w];
      }
    }
  }
  return out;
}

inline HandlebodyVector graph_vector(const Basis& B, const std::vector<int>& color) {
  int i = B.find(color);
  if (i < 0) throw LatticeError("not a small coloring");
  return HandlebodyVector::unit(B, i);
}

// The empty graph (all colors zero), when it belongs to the basis.
inline HandlebodyVector empty_vector(const Basis& B) {
  return graph_vector(B, std::vector<int>(B.tree.edges.size(), 0));
}

// v_i = h^{-1}(2 + z_i)
inline HandlebodyVector v_multiply(const HandlebodyVector& x, int hole) {
  const PrimeContext& c = *x.basis->ctx;
  HandlebodyVector y = z_multiply(x, hole) + CycloElem(c, 2L) * x;
  return CycloElem::h(c).inverse() * y;
}

// z_12 on the empty graph for the genus-two tree: g((1,1),(0,0)) = z_12 + [2]^{-1} z_1 z_2.
inline HandlebodyVector z12_empty(const Basis& B) {
  const auto& t = B.tree;
  if (t.g != 2 || t.s() != 0) throw LatticeError("z12 needs genus 2 without points");
  const PrimeContext& c = *B.ctx;
  auto col = std::vector<int>(t.edges.size(), 0);
  col[t.loop_edge[0]] = col[t.loop_edge[1]] = 1;
  col[t.stick_edge[0]] = 2;
  HandlebodyVector eye = graph_vector(B, col);
  HandlebodyVector zz = z_multiply(z_multiply(empty_vector(B), 0), 1);
  return eye + (-CycloElem::qint(c, 2).inverse()) * zz;
}

inline HandlebodyVector v12_empty(const Basis& B) {
  const PrimeContext& c = *B.ctx;
  return CycloElem::h(c).inverse() * (z12_empty(B) + CycloElem(c, 2L) * empty_vector(B));
}

// Rows: coordinates of b(a,b,c) (or b#) over the small graph basis.
inline CMatrix basis_matrix(const Basis& B, bool sharp) {
  const PrimeContext& c = *B.ctx;
  const CycloElem hinv = CycloElem::h(c).inverse();
  CMatrix T = cmatrix(c, B.size(), B.size());
  for (int x = 0; x < B.size(); ++x) {
    const auto& col = B.cols[x];
    HandlebodyVector v = HandlebodyVector::unit(B, B.base_of(col));
    for (int i = 0; i < B.tree.g; ++i)
      for (int k = 0; k < col.b[i]; ++k) v = z_multiply(v, i) + CycloElem(c, 2L) * v;
    v = hinv.pow(sharp ? exponent_b(col) + sharp_shift(col) : exponent_b(col)) * v;
    T[x] = v.coords;
  }
  return T;
}

inline std::vector<HandlebodyVector> basis_B(const Basis& B) {
  std::vector<HandlebodyVector> out;
  for (auto& row : basis_matrix(B, false)) out.push_back({&B, row});
  return out;
}
inline std::vector<HandlebodyVector> basis_Bsharp(const Basis& B) {
  std::vector<HandlebodyVector> out;
  for (auto& row : basis_matrix(B, true)) out.push_back({&B, row});
  return out;
}

// (x, y) with the second argument conjugated, for a diagonal graph Gram.
inline CycloElem form(const HandlebodyVector& x, const HandlebodyVector& y, const CVector& gdiag) {
  CycloElem s = CycloElem::zero(*x.basis->ctx);
  for (size_t i = 0; i < gdiag.size(); ++i)
    if (!x.coords[i].is_zero() && !y.coords[i].is_zero()) s += x.coords[i] * gdiag[i] * y.coords[i].conj();
  return s;
}

inline CMatrix gram_of(const PrimeContext& c, const CMatrix& X, const CMatrix& Y, const CVector& gdiag) {
  CMatrix M = cmatrix(c, X.size(), Y.size());
  for (size_t a = 0; a < X.size(); ++a)
    for (size_t b = 0; b < Y.size(); ++b)
      for (size_t i = 0; i < gdiag.size(); ++i)
        if (!X[a][i].is_zero() && !Y[b][i].is_zero()) M[a][b] += X[a][i] * gdiag[i] * Y[b][i].conj();
  return M;
}

// Multiply by i^{g mod 2} (only changes anything when p = 1 mod 4).
inline CMatrix plus_form(const CMatrix& M, int g) {
  if (M.empty()) return M;
  const PrimeContext& c = M[0][0].ctx();
  if (c.ring_kind != RingKind::Zeta4P || g % 2 == 0) return M;
  CMatrix r = M;
  const CycloElem i = CycloElem::imag_unit(c);
  for (auto& row : r)
    for (auto& x : row) x *= i;
  return r;
}

struct LatticeData {
  Basis basis;
  GramMethod method = GramMethod::Surgery;
  CVector gdiag;
  CMatrix T, Tsharp;
  CMatrix gramB, dual;  // (b, b'), (b, b#')
};

inline LatticeData lattice_data(const LollipopTree& t, const PrimeContext& ctx, GramMethod m) {
  LatticeData L;
  L.basis = make_basis(t, ctx);
  L.method = m;
  L.gdiag = gram_diagonal(gram_graph(L.basis, m));
  L.T = basis_matrix(L.basis, false);
  L.Tsharp = basis_matrix(L.basis, true);
  L.gramB = gram_of(ctx, L.T, L.T, L.gdiag);
  L.dual = gram_of(ctx, L.T, L.Tsharp, L.gdiag);
  return L;
}

inline bool all_in_O(const CMatrix& M) {
  for (const auto& r : M)
    for (const auto& x : r)
      if (!x.in_O()) return false;
  return true;
}

// Integrality and unimodularity of the pairing between B and B#.
struct DualityCheck {
  bool gram_integral = false, dual_integral = false, dual_unit = false;
  long det_valuation = 0, expected_valuation = 0;
  bool ok() const { return gram_integral && dual_integral && dual_unit && det_valuation == expected_valuation; }
};

inline DualityCheck duality_check(const LatticeData& L);

// b(a,b,c) only involves g(a,b',c) with b' <= b.
inline bool is_triangular(const Basis& B, const CMatrix& T) {
  for (int x = 0; x < B.size(); ++x)
    for (int y = 0; y < B.size(); ++y) {
      if (T[x][y].is_zero()) continue;
      const auto &cx = B.cols[x], &cy = B.cols[y];
      if (B.base_of(cx) != B.base_of(cy)) return false;
      for (int i = 0; i < B.tree.g; ++i)
        if (cy.b[i] > cx.b[i]) return false;
    }
  return true;
}

inline long det_valuation(const CVector& gdiag) {
  if (gdiag.empty()) return 0;
  const PrimeContext& c = gdiag[0].ctx();
  CycloElem det = CycloElem::one(c);
  for (const auto& x : gdiag) det *= x;
  return h_valuation_field(det);
}

inline DualityCheck duality_check(const LatticeData& L) {
  DualityCheck r;
  const PrimeContext& c = *L.basis.ctx;
  r.gram_integral = all_in_O(L.gramB);
  r.dual_integral = all_in_O(L.dual);
  CycloElem det = L.dual.empty() ? CycloElem::one(c) : determinant(L.dual);
  r.dual_unit = det.in_O() && is_unit(det);
  r.det_valuation = det_valuation(L.gdiag);
  r.expected_valuation = (long)L.basis.tree.g * (c.d - 1) * L.basis.size();
  return r;
}

// Residue field map O -> F_p: i goes to a fixed square root of -1 when
// p = 1 mod 4.
inline long residue_fp(const CycloElem& x) {
  const PrimeContext& c = x.ctx();
  Residue r = reduce_mod_h(x);
  if (r.im == 0) return r.re;
  long s = 0;
  for (long t = 1; t < c.p; ++t)
    if (t * t % c.p == c.p - 1) {
      s = t;
      break;
    }
  if (!s) throw LatticeError("residue has an imaginary part");
  return mod(r.re + s * r.im, c.p);
}

using FpMatrix = std::vector<std::vector<long>>;

inline FpMatrix reduce_matrix(const CMatrix& M) {
  FpMatrix r(M.size());
  for (size_t i = 0; i < M.size(); ++i)
    for (const auto& x : M[i]) r[i].push_back(residue_fp(x));
  return r;
}

inline long fp_inverse(long a, long p) {
  long r = 1, e = p - 2;
  a = mod(a, p);
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline int fp_rank(FpMatrix m, long p) {
  int rank = 0;
  const int rows = (int)m.size(), cols = rows ? (int)m[0].size() : 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    long inv = fp_inverse(m[rank][col], p);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      long f = m[r][col] * inv % p;
      for (int j = 0; j < cols; ++j) m[r][j] = mod(m[r][j] - f * m[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

// Mod-h forms.  The plus form is used, so entries reduce into F_p.  The
// reduced form is sign-symmetric with sign (-1)^g when p = 1 mod 4 and +1
// otherwise; h ( , ) on the odd span has the opposite sign.
struct TorsionReport {
  int dim = 0, radical_dim = 0, quotient_dim = 0, odd_count = 0;
  int form_sign = 1, odd_form_sign = -1;
  bool form_symmetry = false;
  bool odd_form_integral = false, odd_form_symmetry = false, odd_form_nondegenerate = false;
};

inline bool has_symmetry(const FpMatrix& M, int sign, long p) {
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M.size(); ++j)
      if (mod(M[i][j] - sign * M[j][i], p) != 0) return false;
  return true;
}

inline TorsionReport torsion_report(const LatticeData& L) {
  const Basis& B = L.basis;
  if (B.tree.s() != 0) throw LatticeError("torsion report needs a surface without points");
  const long p = B.ctx->p;
  const int g = B.tree.g;
  TorsionReport r;
  r.dim = B.size();
  r.form_sign = (B.ctx->ring_kind == RingKind::Zeta4P && g % 2) ? -1 : 1;
  r.odd_form_sign = -r.form_sign;
  const CMatrix G = plus_form(L.gramB, g);
  if (!all_in_O(G)) throw LatticeError("Gram(B) is not integral");
  FpMatrix M = reduce_matrix(G);
  r.radical_dim = r.dim - fp_rank(M, p);
  r.quotient_dim = r.dim - r.radical_dim;
  r.form_symmetry = has_symmetry(M, r.form_sign, p);
  std::vector<int> odd;
  for (int i = 0; i < r.dim; ++i)
    if (B.cols[i].odd()) odd.push_back(i);
  r.odd_count = (int)odd.size();
  // h (b#_x, b#_y) on the odd span; there b# = h^{-1} b
  const CycloElem hb = CycloElem::h(*B.ctx).conj();
  CMatrix F = cmatrix(*B.ctx, odd.size(), odd.size());
  r.odd_form_integral = true;
  for (size_t a = 0; a < odd.size(); ++a)
    for (size_t b = 0; b < odd.size(); ++b) {
      F[a][b] = G[odd[a]][odd[b]] / hb;
      r.odd_form_integral = r.odd_form_integral && F[a][b].in_O();
    }
  if (r.odd_form_integral) {
    FpMatrix Fm = reduce_matrix(F);
    r.odd_form_symmetry = has_symmetry(Fm, r.odd_form_sign, p);
    r.odd_form_nondegenerate = fp_rank(Fm, p) == (int)odd.size();
  }
  return r;
}

// Pseudorandom v-graphs: products of v_i (and v_12 in genus two) applied
// to graph basis vectors g(a,0,c), combined with small integer weights.
// Loop colors never pass d-1, so no folding is involved.
inline std::vector<HandlebodyVector> vgraph_sample(const Basis& B, unsigned seed, int count) {
  std::mt19937 rng(seed);
  const PrimeContext& c = *B.ctx;
  const int d = c.d;
  std::vector<int> bases;
  for (int x = 0; x < B.size(); ++x)
    if (B.base_of(B.cols[x]) == x) bases.push_back(x);
  const bool eyeglass = B.tree.g == 2 && B.tree.s() == 0;
  std::vector<HandlebodyVector> out;
  for (int n = 0; n < count; ++n) {
    HandlebodyVector acc = HandlebodyVector::zero(B);
    int terms = 1 + (int)(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      HandlebodyVector v;
      std::vector<int> room;
      if (eyeglass && rng() % 3 == 0) {
        v = v12_empty(B);
        room = {d - 2, d - 2};
      } else {
        int x = bases[rng() % bases.size()];
        v = HandlebodyVector::unit(B, x);
        for (int i = 0; i < B.tree.g; ++i) room.push_back(d - 1 - B.cols[x].a[i]);
      }
      for (int i = 0; i < B.tree.g; ++i) {
        int k = room[i] > 0 ? (int)(rng() % (room[i] + 1)) : 0;
        for (int j = 0; j < k; ++j) v = v_multiply(v, i);
      }
      long w = (long)(rng() % 7) - 3;
      acc += CycloElem::zeta_p(c, (long)(rng() % c.p)) * CycloElem(c, w == 0 ? 1L : w) * v;
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace so3

#endif
