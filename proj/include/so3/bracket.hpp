// Kauffman bracket evaluation of colored diagrams.
//
// The diagram is expanded into a network of elementary crossings and
// Jones-Wenzl boxes joined by wires.  Nodes are absorbed one at a time; the
// running state is a linear combination of pairings of the frontier (the
// wire ends that still lead to unabsorbed nodes or to the boundary).
#ifndef SO3_BRACKET_HPP
#define SO3_BRACKET_HPP

#include <array>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

#include "so3/diagram.hpp"
#include "so3/tl.hpp"

namespace so3 {

struct WidthExceeded : std::runtime_error {
  explicit WidthExceeded(int w, int cap)
      : std::runtime_error("frontier width " + std::to_string(w) + " exceeds cap " + std::to_string(cap)) {}
};

struct EngineConfig {
  int width_cap = 14;
};

inline EngineConfig& default_engine_config() {
  static EngineConfig cfg;
  return cfg;
}

// Raises (or lowers) the default width cap for the lifetime of the object.
struct ScopedWidthCap {
  explicit ScopedWidthCap(int cap) : saved(default_engine_config().width_cap) { default_engine_config().width_cap = cap; }
  ~ScopedWidthCap() { default_engine_config().width_cap = saved; }
  ScopedWidthCap(const ScopedWidthCap&) = delete;
  ScopedWidthCap& operator=(const ScopedWidthCap&) = delete;
  int saved;
};

struct EngineStats {
  int max_width = 0;
  size_t max_states = 0;
  int nodes = 0;
};

// Network of elementary pieces.
struct Network {
  enum Kind { Cross, JW };
  struct Piece {
    Kind kind;
    int n;  // JW size
    std::vector<int> slots;
  };
  std::vector<Piece> pieces;
  std::vector<int> owner;  // slot -> piece, -1 for boundary
  std::vector<int> mate;   // slot -> slot at the other end of its wire
  std::vector<int> bpos;   // slot -> boundary position (boundary slots only)
  int free_loops = 0;
  int npoints = 0;         // number of boundary positions
};

namespace detail {

class NetBuilder {
 public:
  explicit NetBuilder(const ColoredDiagram& dg) : dg_(dg) {}

  Network build() {
    dg_.validate();
    npoints_ = dg_.num_boundary_points();
    // port ids
    port_base_.resize(dg_.segs.size());
    for (size_t s = 0; s < dg_.segs.size(); ++s) {
      port_base_[s] = npt_;
      npt_ += 2 * dg_.segs[s].color;
    }
    adj_.assign(npt_, {-1, -1});
    choose_projectors();
    for (size_t s = 0; s < dg_.segs.size(); ++s) wire_segment((int)s);
    for (size_t n = 0; n < dg_.nodes.size(); ++n) wire_node((int)n);
    return trace();
  }

 private:
  int port(int seg, int side, int i) const { return port_base_[seg] + side * dg_.segs[seg].color + i; }
  int port(EndRef e, int i) const { return port(e.seg, e.side, i); }
  int new_point() {
    adj_.push_back({-1, -1});
    return npt_++;
  }
  void link(int u, int v) {
    auto put = [&](int a, int b) {
      if (adj_[a][0] < 0) adj_[a][0] = b;
      else if (adj_[a][1] < 0) adj_[a][1] = b;
      else throw DiagramError("network: point with three connections");
    };
    put(u, v);
    put(v, u);
  }
  int new_slot(int piece, int bpos = -1) {
    int pt = new_point();
    slot_of_point_.resize(npt_, -1);
    slot_of_point_[pt] = (int)slot_points_.size();
    slot_points_.push_back(pt);
    slot_owner_.push_back(piece);
    slot_bpos_.push_back(bpos);
    return pt;
  }

  // One projector per chain of segments running through crossings.
  void choose_projectors() {
    const int S = (int)dg_.segs.size();
    std::vector<int> parent(S);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& nd : dg_.nodes) {
      if (nd.kind != NodeKind::Crossing) continue;
      parent[find(nd.ends[0].seg)] = find(nd.ends[2].seg);
      parent[find(nd.ends[1].seg)] = find(nd.ends[3].seg);
    }
    jw_.assign(S, false);
    std::vector<char> done(S, 0);
    for (int s = 0; s < S; ++s) {
      int r = find(s);
      if (done[r]) continue;
      done[r] = 1;
      if (dg_.segs[s].color >= 2) jw_[s] = true;
    }
  }

  void wire_segment(int s) {
    const auto& sg = dg_.segs[s];
    const int n = sg.color;
    if (n == 0) return;
    if (jw_[s]) {
      int piece = (int)pieces_.size();
      pieces_.push_back({Network::JW, n, {}});
      std::vector<int> pts;
      for (int k = 0; k < 2 * n; ++k) pts.push_back(new_slot(piece));
      pieces_[piece].slots = pts;
      for (int i = 0; i < n; ++i) {
        link(port(s, 0, i), pts[n + (n - 1 - i)]);
        link(port(s, 1, i), pts[i]);
      }
    } else {
      for (int i = 0; i < n; ++i) link(port(s, 0, i), port(s, 1, n - 1 - i));
    }
    if (sg.closed)
      for (int t = 0; t < n; ++t) link(port(s, 1, n - 1 - t), port(s, 0, t));
  }

  void wire_node(int id) {
    const auto& nd = dg_.nodes[id];
    switch (nd.kind) {
      case NodeKind::Boundary: {
        EndRef e = nd.ends[0];
        for (int i = 0; i < (int)nd.boundary_pos.size(); ++i) link(port(e, i), new_slot(-1, nd.boundary_pos[i]));
        break;
      }
      case NodeKind::Vertex: {
        int c[3];
        for (int k = 0; k < 3; ++k) c[k] = dg_.segs[nd.ends[k].seg].color;
        for (int k = 0; k < 3; ++k) {
          int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
          int x = (c[k] + c[k1] - c[k2]) / 2;
          for (int t = 0; t < x; ++t) link(port(nd.ends[k], c[k] - 1 - t), port(nd.ends[k1], t));
        }
        break;
      }
      case NodeKind::Crossing: {
        EndRef a = nd.ends[0], b = nd.ends[1], c = nd.ends[2], d = nd.ends[3];
        const int m = dg_.segs[a.seg].color, n = dg_.segs[b.seg].color;
        // elementary crossing (i, j): slots S, E, N, W
        std::vector<std::array<int, 4>> ec(m * n);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j) {
            int piece = (int)pieces_.size();
            pieces_.push_back({Network::Cross, 0, {}});
            auto& e = ec[i * n + j];
            for (int k = 0; k < 4; ++k) e[k] = new_slot(piece);
            pieces_[piece].slots = {e[0], e[1], e[2], e[3]};
          }
        auto S = [&](int i, int j) { return ec[i * n + j][0]; };
        auto E = [&](int i, int j) { return ec[i * n + j][1]; };
        auto N = [&](int i, int j) { return ec[i * n + j][2]; };
        auto W = [&](int i, int j) { return ec[i * n + j][3]; };
        for (int i = 0; i < m; ++i) {
          if (n == 0) {
            link(port(a, i), port(c, m - 1 - i));
            continue;
          }
          link(port(a, i), S(i, 0));
          for (int j = 0; j + 1 < n; ++j) link(N(i, j), S(i, j + 1));
          link(N(i, n - 1), port(c, m - 1 - i));
        }
        for (int j = 0; j < n; ++j) {
          if (m == 0) {
            link(port(b, j), port(d, n - 1 - j));
            continue;
          }
          link(port(b, j), E(m - 1, j));
          for (int i = 0; i + 1 < m; ++i) link(E(i, j), W(i + 1, j));
          link(W(0, j), port(d, n - 1 - j));
        }
        break;
      }
    }
  }

  Network trace() {
    Network net;
    const int ns = (int)slot_points_.size();
    net.owner = slot_owner_;
    net.bpos = slot_bpos_;
    net.mate.assign(ns, -1);
    net.npoints = npoints_;
    slot_of_point_.resize(npt_, -1);
    std::vector<char> seen(npt_, 0);
    for (int s = 0; s < ns; ++s) {
      if (net.mate[s] >= 0) continue;
      int prev = slot_points_[s], cur = adj_[prev][0];
      seen[prev] = 1;
      if (cur < 0) throw DiagramError("network: unconnected slot");
      while (slot_of_point_[cur] < 0) {
        seen[cur] = 1;
        int nxt = adj_[cur][0] == prev ? adj_[cur][1] : adj_[cur][0];
        if (nxt < 0) throw DiagramError("network: open wire");
        prev = cur;
        cur = nxt;
      }
      seen[cur] = 1;
      int t = slot_of_point_[cur];
      net.mate[s] = t;
      net.mate[t] = s;
    }
    for (int pt = 0; pt < npt_; ++pt) {
      if (seen[pt]) continue;
      if (adj_[pt][0] < 0 || adj_[pt][1] < 0) throw DiagramError("network: open wire");
      ++net.free_loops;
      int prev = pt, cur = adj_[pt][0];
      seen[pt] = 1;
      while (cur != pt) {
        seen[cur] = 1;
        int nxt = adj_[cur][0] == prev ? adj_[cur][1] : adj_[cur][0];
        prev = cur;
        cur = nxt;
      }
    }
    net.pieces.reserve(pieces_.size());
    for (auto& pc : pieces_) {
      Network::Piece q{pc.kind, pc.n, {}};
      for (int pt : pc.slots) q.slots.push_back(slot_of_point_[pt]);
      net.pieces.push_back(q);
    }
    return net;
  }

  const ColoredDiagram& dg_;
  int npoints_ = 0;
  int npt_ = 0;
  std::vector<int> port_base_;
  std::vector<std::array<int, 2>> adj_;
  std::vector<int> slot_of_point_;
  std::vector<int> slot_points_, slot_owner_, slot_bpos_;
  std::vector<Network::Piece> pieces_;
  std::vector<bool> jw_;
};

template <class T>
struct Term {
  Pairing pairing;  // on local slots of the piece
  ZCyc<T> coef;
};

template <class T>
class Contractor {
 public:
  Contractor(const Network& net, int p, int cap) : net_(net), p_(p), cap_(cap) {
    delta_ = -ZCyc<T>::qint(p, 2);
    delta_pows_.push_back(ZCyc<T>::constant(p, 1));
    cross_terms_.push_back({{1, 0, 3, 2}, ZCyc<T>::A_pow(p, 1)});
    cross_terms_.push_back({{3, 2, 1, 0}, ZCyc<T>::A_pow(p, -1)});
  }

  // Returns map from boundary pairing to coefficient.
  std::map<Pairing, ZCyc<T>> run(EngineStats* stats) {
    const int P = (int)net_.pieces.size();
    const int ns = (int)net_.owner.size();
    std::vector<char> done(P, 0);
    // frontier: ordered list of slots; fpos[slot] = index or -1
    std::vector<int> frontier;
    std::vector<int> fpos(ns, -1);
    using Map = std::unordered_map<std::string, ZCyc<T>>;
    Map states;
    states.emplace(std::string(), ZCyc<T>::constant(p_, 1));
    int max_w = 0;
    size_t max_states = 1;

    auto processed = [&](int slot) { return net_.owner[slot] >= 0 && done[net_.owner[slot]]; };

    for (int step = 0; step < P; ++step) {
      // greedy choice
      int best = -1, best_w = 0, best_in = -1;
      for (int x = 0; x < P; ++x) {
        if (done[x]) continue;
        int in = 0, out = 0;
        for (int s : net_.pieces[x].slots) {
          int m = net_.mate[s];
          if (net_.owner[m] == x) continue;
          if (processed(m)) ++in;
          else ++out;
        }
        int w = (int)frontier.size() - in + out;
        if (best < 0 || w < best_w || (w == best_w && in > best_in)) {
          best = x;
          best_w = w;
          best_in = in;
        }
      }
      if (best_w > cap_) throw WidthExceeded(best_w, cap_);
      max_w = std::max(max_w, best_w);
      const auto& piece = net_.pieces[best];
      const int k = (int)piece.slots.size();
      // local index of each slot of the piece
      std::unordered_map<int, int> local;
      for (int i = 0; i < k; ++i) local[piece.slots[i]] = i;
      // new frontier: old entries not in the piece, plus outward mates
      std::vector<int> nf;
      for (int s : frontier)
        if (net_.owner[s] != best) nf.push_back(s);
      std::vector<int> outward(k, -1);  // local -> mate slot if it is new frontier
      for (int i = 0; i < k; ++i) {
        int m = net_.mate[piece.slots[i]];
        if (net_.owner[m] == best || processed(m)) continue;
        outward[i] = m;
        nf.push_back(m);
      }
      std::vector<int> nfpos(ns, -1);
      for (int i = 0; i < (int)nf.size(); ++i) nfpos[nf[i]] = i;

      const std::vector<Term<T>>& terms = terms_for(piece);
      Map next;
      next.reserve(states.size() * 2);
      std::vector<int> outl(k);    // per local slot: >=0 local slot to continue, or -(2+frontier index)
      std::vector<char> vis(k);
      std::string key(nf.size(), '\0');
      for (const auto& [skey, coef] : states) {
        // base key: pairs among frontier entries untouched by the piece
        for (int i = 0; i < (int)frontier.size(); ++i) {
          int s = frontier[i];
          if (net_.owner[s] == best) continue;
          int partner = frontier[(unsigned char)skey[i]];
          if (net_.owner[partner] == best) continue;
          key[nfpos[s]] = (char)nfpos[partner];
        }
        for (int i = 0; i < k; ++i) {
          int s = piece.slots[i];
          int m = net_.mate[s];
          if (net_.owner[m] == best) {
            outl[i] = local[m];
          } else if (processed(m)) {
            int partner = frontier[(unsigned char)skey[fpos[s]]];
            if (net_.owner[partner] == best) outl[i] = local[partner];
            else outl[i] = -(2 + nfpos[partner]);
          } else {
            outl[i] = -(2 + nfpos[m]);
          }
        }
        for (const auto& term : terms) {
          std::fill(vis.begin(), vis.end(), 0);
          bool ok = true;
          for (int i = 0; i < k && ok; ++i) {
            if (vis[i] || outl[i] >= 0) continue;
            int e1 = -outl[i] - 2;
            int cur = i;
            for (;;) {
              vis[cur] = 1;
              int t = term.pairing[cur];
              vis[t] = 1;
              int o = outl[t];
              if (o < 0) {
                int e2 = -o - 2;
                key[e1] = (char)e2;
                key[e2] = (char)e1;
                break;
              }
              cur = o;
            }
          }
          int loops = 0;
          for (int i = 0; i < k; ++i) {
            if (vis[i]) continue;
            ++loops;
            int cur = i;
            while (!vis[cur]) {
              vis[cur] = 1;
              int t = term.pairing[cur];
              vis[t] = 1;
              cur = outl[t];
            }
          }
          ZCyc<T> c = term.coef;
          if (loops) c = c * delta_pow(loops);
          auto it = next.find(key);
          if (it == next.end()) next.emplace(key, coef * c);
          else it->second.add_product(coef, c);
        }
      }
      for (auto it = next.begin(); it != next.end();)
        it = it->second.is_zero() ? next.erase(it) : std::next(it);
      states.swap(next);
      max_states = std::max(max_states, states.size());
      done[best] = 1;
      for (int s : frontier) fpos[s] = -1;
      frontier = nf;
      for (int i = 0; i < (int)frontier.size(); ++i) fpos[frontier[i]] = i;
      if (states.empty()) break;
    }
    if (stats) {
      stats->max_width = max_w;
      stats->max_states = max_states;
      stats->nodes = P;
    }
    // boundary pairings
    std::map<Pairing, ZCyc<T>> out;
    ZCyc<T> loopf = delta_pow(net_.free_loops);
    // boundary slots whose mate is also boundary
    Pairing direct(net_.npoints, -1);
    for (int s = 0; s < ns; ++s)
      if (net_.owner[s] < 0 && net_.owner[net_.mate[s]] < 0) direct[net_.bpos[s]] = net_.bpos[net_.mate[s]];
    bool all_done = true;
    for (int x = 0; x < P; ++x) all_done = all_done && done[x];
    if (!all_done) return out;  // everything vanished
    for (const auto& [skey, coef] : states) {
      Pairing m = direct;
      for (int i = 0; i < (int)frontier.size(); ++i)
        m[net_.bpos[frontier[i]]] = net_.bpos[frontier[(unsigned char)skey[i]]];
      out.emplace(m, coef * loopf);
    }
    return out;
  }

 private:
  const ZCyc<T>& delta_pow(int k) {
    while ((int)delta_pows_.size() <= k) delta_pows_.push_back(delta_pows_.back() * delta_);
    return delta_pows_[k];
  }
  const std::vector<Term<T>>& terms_for(const Network::Piece& pc) {
    if (pc.kind == Network::Cross) return cross_terms_;
    auto it = jw_terms_.find(pc.n);
    if (it != jw_terms_.end()) return it->second;
    std::vector<Term<T>> v;
    for (const auto& [d, c] : jw_projector_z(p_, pc.n)) v.push_back({d, c.template convert<T>()});
    return jw_terms_.emplace(pc.n, std::move(v)).first->second;
  }

  const Network& net_;
  int p_;
  int cap_;
  ZCyc<T> delta_;
  std::vector<ZCyc<T>> delta_pows_;
  std::vector<Term<T>> cross_terms_;
  std::map<int, std::vector<Term<T>>> jw_terms_;
};

}  // namespace detail

inline Network build_network(const ColoredDiagram& dg) { return detail::NetBuilder(dg).build(); }

// Exact relative evaluation in Z[zeta_p], returned as ZCyc<mpz_class>.
inline std::map<Pairing, ZCyc<mpz_class>> bracket_z(const ColoredDiagram& dg, int p, int cap = -1,
                                                    EngineStats* stats = nullptr) {
  if (cap < 0) cap = default_engine_config().width_cap;
  if (dg.max_color() > p - 2) throw DiagramError("color exceeds p-2");
  Network net = build_network(dg);
  if (net.npoints > 250) throw DiagramError("too many boundary points");
  try {
    detail::Contractor<int64_t> c(net, p, cap);
    std::map<Pairing, ZCyc<mpz_class>> out;
    for (const auto& [m, v] : c.run(stats)) out.emplace(m, v.template convert<mpz_class>());
    return out;
  } catch (const Overflow&) {
    detail::Contractor<mpz_class> c(net, p, cap);
    return c.run(stats);
  }
}

inline TLVector bracket_relative(const ColoredDiagram& dg, const PrimeContext& ctx, int cap = -1,
                                 EngineStats* stats = nullptr) {
  TLVector r;
  r.npoints = dg.num_boundary_points();
  for (const auto& [m, v] : bracket_z(dg, ctx.p, cap, stats)) r.add(m, v.to_cyclo(ctx));
  return r;
}

inline ZCyc<mpz_class> bracket_zcyc(const ColoredDiagram& dg, int p, int cap = -1, EngineStats* stats = nullptr) {
  if (dg.num_boundary_points() != 0) throw DiagramError("bracket: diagram has boundary points");
  auto m = bracket_z(dg, p, cap, stats);
  if (m.empty()) return ZCyc<mpz_class>(p);
  return m.begin()->second;
}

inline CycloElem bracket(const ColoredDiagram& dg, const PrimeContext& ctx, int cap = -1,
                         EngineStats* stats = nullptr) {
  return bracket_zcyc(dg, ctx.p, cap, stats).to_cyclo(ctx);
}

}  // namespace so3

#endif
