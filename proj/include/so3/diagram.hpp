// Colored planar diagrams: banded segments joined at crossings, trivalent
// vertices and boundary points.
//
// Every node lists its ends in counterclockwise order.  A crossing has ends
// (a, b, c, d) with a->c the under strand and b->d the over strand.  A
// segment of color n is an n-cable; port i of a segment end is the i-th
// strand in counterclockwise order around the node it is attached to.
#ifndef SO3_DIAGRAM_HPP
#define SO3_DIAGRAM_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace so3 {

enum class NodeKind { Crossing, Vertex, Boundary };

struct EndRef {
  int seg = -1;
  int side = 0;
};

struct NodeAttach {
  int node = -1;
  int slot = -1;
};

struct Segment {
  int color = 0;
  bool closed = false;  // a circle that meets no node
  bool dead = false;    // absorbed by a join; removed by compact()
  NodeAttach end[2];
};

struct Node {
  NodeKind kind = NodeKind::Crossing;
  std::vector<EndRef> ends;
  std::vector<int> boundary_pos;  // Boundary only: output position of each port
};

struct DiagramError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ColoredDiagram {
 public:
  std::vector<Segment> segs;
  std::vector<Node> nodes;

  int add_segment(int color) {
    if (color < 0) throw DiagramError("negative color");
    segs.push_back(Segment{color, false, false, {}});
    return (int)segs.size() - 1;
  }
  int add_node(NodeKind kind, int nends) {
    Node n;
    n.kind = kind;
    n.ends.assign(nends, EndRef{});
    nodes.push_back(n);
    return (int)nodes.size() - 1;
  }
  void attach(int seg, int side, int node, int slot) {
    segs[seg].end[side] = NodeAttach{node, slot};
    nodes[node].ends[slot] = EndRef{seg, side};
  }
  int add_closed(int color) {
    int s = add_segment(color);
    segs[s].closed = true;
    return s;
  }

  int color_at(int node, int slot) const { return segs[nodes[node].ends[slot].seg].color; }
  int num_boundary_points() const {
    int n = 0;
    for (const auto& nd : nodes)
      if (nd.kind == NodeKind::Boundary) n += (int)nd.boundary_pos.size();
    return n;
  }
  int max_color() const {
    int m = 0;
    for (const auto& s : segs) m = std::max(m, s.color);
    return m;
  }

  void validate() const {
    for (size_t s = 0; s < segs.size(); ++s) {
      const auto& sg = segs[s];
      if (sg.closed || sg.dead) continue;
      for (int e = 0; e < 2; ++e) {
        const auto& at = sg.end[e];
        if (at.node < 0 || at.node >= (int)nodes.size()) throw DiagramError("segment " + std::to_string(s) + " has a dangling end");
        const auto& back = nodes[at.node].ends.at(at.slot);
        if (back.seg != (int)s || back.side != e) throw DiagramError("inconsistent incidence at segment " + std::to_string(s));
      }
    }
    for (size_t n = 0; n < nodes.size(); ++n) {
      const auto& nd = nodes[n];
      for (const auto& e : nd.ends)
        if (e.seg < 0) throw DiagramError("node " + std::to_string(n) + " has an unattached end");
      switch (nd.kind) {
        case NodeKind::Crossing:
          if (nd.ends.size() != 4) throw DiagramError("crossing needs 4 ends");
          if (color_at((int)n, 0) != color_at((int)n, 2) || color_at((int)n, 1) != color_at((int)n, 3))
            throw DiagramError("crossing strands change color");
          break;
        case NodeKind::Vertex: {
          if (nd.ends.size() != 3) throw DiagramError("vertex needs 3 ends");
          int a = color_at((int)n, 0), b = color_at((int)n, 1), c = color_at((int)n, 2);
          if ((a + b + c) % 2 != 0 || a > b + c || b > a + c || c > a + b)
            throw DiagramError("inadmissible vertex (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
          break;
        }
        case NodeKind::Boundary:
          if (nd.ends.size() != 1) throw DiagramError("boundary node needs 1 end");
          if ((int)nd.boundary_pos.size() != color_at((int)n, 0)) throw DiagramError("boundary positions do not match color");
          break;
      }
    }
  }

  // Drop dead segments and renumber.
  void compact() {
    std::vector<int> remap(segs.size(), -1);
    std::vector<Segment> kept;
    for (size_t s = 0; s < segs.size(); ++s) {
      if (segs[s].dead) continue;
      remap[s] = (int)kept.size();
      kept.push_back(segs[s]);
    }
    segs = std::move(kept);
    for (auto& nd : nodes)
      for (auto& e : nd.ends) e.seg = remap[e.seg];
  }

  // Mirror image: every crossing changes which strand is over.
  ColoredDiagram mirror() const {
    ColoredDiagram m = *this;
    for (size_t n = 0; n < m.nodes.size(); ++n) {
      auto& nd = m.nodes[n];
      if (nd.kind != NodeKind::Crossing) continue;
      std::rotate(nd.ends.begin(), nd.ends.begin() + 1, nd.ends.end());
      for (int k = 0; k < 4; ++k) m.segs[nd.ends[k].seg].end[nd.ends[k].side] = NodeAttach{(int)n, k};
    }
    return m;
  }

  // Disjoint union drawn side by side.
  void append(const ColoredDiagram& o) {
    const int s0 = (int)segs.size(), n0 = (int)nodes.size(), b0 = num_boundary_points();
    for (auto sg : o.segs) {
      for (auto& e : sg.end)
        if (e.node >= 0) e.node += n0;
      segs.push_back(sg);
    }
    for (auto nd : o.nodes) {
      for (auto& e : nd.ends) e.seg += s0;
      for (auto& b : nd.boundary_pos) b += b0;
      nodes.push_back(nd);
    }
  }
};

// Builds diagrams from a sequence of elementary Morse moves.  Strands run
// downward; positions count open strands from the left.
class MorseBuilder {
 public:
  MorseBuilder() = default;

  // Boundary points along the top, left to right.
  MorseBuilder& top(const std::vector<int>& colors) {
    for (int c : colors) {
      int nd = dg_.add_node(NodeKind::Boundary, 1);
      auto& pos = dg_.nodes[nd].boundary_pos;
      for (int i = 0; i < c; ++i) pos.push_back(next_pos_++);
      int s = dg_.add_segment(c);
      dg_.attach(s, 0, nd, 0);
      open_.push_back({s, 1});
    }
    return *this;
  }
  // Local maximum: a new arc whose two legs appear at pos, pos+1.
  MorseBuilder& cup(int pos, int color) {
    check_insert(pos);
    int s = dg_.add_segment(color);
    open_.insert(open_.begin() + pos, {{s, 0}, {s, 1}});
    return *this;
  }
  // Local minimum joining strands pos and pos+1.
  MorseBuilder& cap(int pos) {
    check_pair(pos);
    EndRef l = open_[pos], r = open_[pos + 1];
    if (dg_.segs[l.seg].color != dg_.segs[r.seg].color) throw DiagramError("cap joins different colors");
    open_.erase(open_.begin() + pos, open_.begin() + pos + 2);
    join(l, r);
    return *this;
  }
  // Strands pos and pos+1 cross; left_over selects the strand coming from the left as over.
  MorseBuilder& cross(int pos, bool left_over) {
    check_pair(pos);
    EndRef L = open_[pos], R = open_[pos + 1];
    int cl = dg_.segs[L.seg].color, cr = dg_.segs[R.seg].color;
    int nd = dg_.add_node(NodeKind::Crossing, 4);
    int sBL = dg_.add_segment(cr), sBR = dg_.add_segment(cl);
    // slots of TL, TR, BL, BR
    int tl, tr, bl, br;
    if (!left_over) {
      tl = 0, bl = 1, br = 2, tr = 3;
    } else {
      tr = 0, tl = 1, bl = 2, br = 3;
    }
    attach_open(L, nd, tl);
    attach_open(R, nd, tr);
    dg_.attach(sBL, 0, nd, bl);
    dg_.attach(sBR, 0, nd, br);
    open_[pos] = {sBL, 1};
    open_[pos + 1] = {sBR, 1};
    return *this;
  }
  // k full framing curls (signed) on strand pos.
  MorseBuilder& twist(int pos, int k) {
    check_strand(pos);
    for (int t = 0; t < std::abs(k); ++t) {
      EndRef T = open_[pos];
      int c = dg_.segs[T.seg].color;
      int nd = dg_.add_node(NodeKind::Crossing, 4);
      int loop = dg_.add_segment(c), down = dg_.add_segment(c);
      if (k > 0) {
        dg_.attach(loop, 0, nd, 0);
        dg_.attach(loop, 1, nd, 1);
        attach_open(T, nd, 2);
        dg_.attach(down, 0, nd, 3);
      } else {
        dg_.attach(loop, 0, nd, 1);
        dg_.attach(loop, 1, nd, 2);
        attach_open(T, nd, 3);
        dg_.attach(down, 0, nd, 0);
      }
      open_[pos] = {down, 1};
    }
    return *this;
  }
  // Strand pos ends at a vertex and two strands colored cl, cr leave it.
  MorseBuilder& split(int pos, int cl, int cr) {
    check_strand(pos);
    EndRef T = open_[pos];
    int nd = dg_.add_node(NodeKind::Vertex, 3);
    attach_open(T, nd, 0);
    int sl = dg_.add_segment(cl), sr = dg_.add_segment(cr);
    dg_.attach(sl, 0, nd, 1);
    dg_.attach(sr, 0, nd, 2);
    open_[pos] = {sl, 1};
    open_.insert(open_.begin() + pos + 1, {sr, 1});
    return *this;
  }
  // Strands pos, pos+1 meet at a vertex and one strand colored c leaves it.
  MorseBuilder& merge(int pos, int c) {
    check_pair(pos);
    EndRef L = open_[pos], R = open_[pos + 1];
    int nd = dg_.add_node(NodeKind::Vertex, 3);
    attach_open(R, nd, 0);
    attach_open(L, nd, 1);
    int s = dg_.add_segment(c);
    dg_.attach(s, 0, nd, 2);
    open_[pos] = {s, 1};
    open_.erase(open_.begin() + pos + 1);
    return *this;
  }
  // Close every open strand at the bottom boundary, left to right.
  MorseBuilder& bottom() {
    int base = next_pos_;
    int total = 0;
    for (auto& e : open_) total += dg_.segs[e.seg].color;
    int offset = 0;
    for (auto& e : open_) {
      int c = dg_.segs[e.seg].color;
      int nd = dg_.add_node(NodeKind::Boundary, 1);
      auto& pos = dg_.nodes[nd].boundary_pos;
      for (int i = 0; i < c; ++i) pos.push_back(base + offset + c - 1 - i);
      offset += c;
      attach_open(e, nd, 0);
    }
    next_pos_ += total;
    open_.clear();
    return *this;
  }

  int width() const { return (int)open_.size(); }
  int color(int pos) const { return dg_.segs[open_.at(pos).seg].color; }

  ColoredDiagram build() {
    if (!open_.empty()) throw DiagramError("builder: strands left open");
    ColoredDiagram out = dg_;
    out.compact();
    out.validate();
    return out;
  }
  // Access for callers that need to attach extra structure.
  ColoredDiagram& raw() { return dg_; }

 private:
  void check_insert(int pos) const {
    if (pos < 0 || pos > (int)open_.size()) throw DiagramError("builder: bad position");
  }
  void check_strand(int pos) const {
    if (pos < 0 || pos >= (int)open_.size()) throw DiagramError("builder: bad position");
  }
  void check_pair(int pos) const {
    if (pos < 0 || pos + 1 >= (int)open_.size()) throw DiagramError("builder: bad position");
  }
  // Attach an open end; the open end may be either side of its segment.
  void attach_open(EndRef e, int node, int slot) { dg_.attach(e.seg, e.side, node, slot); }

  // Join two open ends.  Each other end is either attached or still open.
  void join(EndRef l, EndRef r) {
    if (l.seg == r.seg) {
      dg_.segs[l.seg].closed = true;
      return;
    }
    int s = dg_.add_segment(dg_.segs[l.seg].color);
    move_end({l.seg, 1 - l.side}, {s, 0});
    move_end({r.seg, 1 - r.side}, {s, 1});
    dg_.segs[l.seg].dead = true;
    dg_.segs[r.seg].dead = true;
  }
  void move_end(EndRef from, EndRef to) {
    const NodeAttach at = dg_.segs[from.seg].end[from.side];
    if (at.node >= 0) {
      dg_.attach(to.seg, to.side, at.node, at.slot);
    } else {
      for (auto& e : open_)
        if (e.seg == from.seg && e.side == from.side) e = to;
    }
  }

  ColoredDiagram dg_;
  std::vector<EndRef> open_;
  int next_pos_ = 0;
};

}  // namespace so3

#endif
