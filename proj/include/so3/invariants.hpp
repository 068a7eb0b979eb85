// Quantum invariants from surgery presentations, the separating-twist
// mapping tori of the genus-2 surface, cut-number bounds and the
// lollipop divisibility suite.
#ifndef SO3_INVARIANTS_HPP
#define SO3_INVARIANTS_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "so3/bracket.hpp"
#include "so3/link.hpp"
#include "so3/lollipop.hpp"
#include "so3/recoupling.hpp"

namespace so3 {

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantResult {
  CycloElem value;
  long o_p = 0;  // kInfiniteValuation when value = 0
  std::optional<int> cut_bound;
};

// floor(o_p / (d-1)); no bound for a vanishing invariant.
inline std::optional<int> cut_bound(long o_p, const PrimeContext& c) {
  if (o_p == kInfiniteValuation) return std::nullopt;
  if (c.d == 1) return std::nullopt;
  return (int)(o_p / (c.d - 1));
}
inline std::optional<int> cut_bound(const InvariantResult& r, const PrimeContext& c) { return cut_bound(r.o_p, c); }

inline InvariantResult make_result(const CycloElem& v) {
  if (!v.in_O()) throw InvariantError("invariant is not in O: " + v.to_string());
  InvariantResult r{v, h_valuation(v), std::nullopt};
  r.cut_bound = cut_bound(r.o_p, v.ctx());
  return r;
}

// <U_sign(omega)>: the omega-colored unknot with framing sign.  d_sign = -1
// uses the omega of the other square root D.
inline CycloElem u_omega(const PrimeContext& c, int sign, int d_sign = 1) {
  const auto& R = recoupling(c);
  CycloElem s = CycloElem::zero(c);
  for (int k = 0; k < c.d; ++k) {
    CycloElem t = R.twist(k);
    if (sign < 0) t = t.conj();
    if (sign == 0) t = CycloElem::one(c);
    s += R.omega()[k] * t * R.loop_value(k);
  }
  return d_sign < 0 ? -s : s;
}

// Sum over omega colorings of the surgery components; other components
// keep their colors.
inline CycloElem omega_sum(const PDLink& L, const LinkLayout& lay, const PrimeContext& c, EngineStats* stats = nullptr,
                           int d_sign = 1) {
  const auto& w = recoupling(c).omega();
  std::vector<int> surg;
  for (size_t i = 0; i < L.comps.size(); ++i)
    if (L.comps[i].role == Role::Surgery) surg.push_back((int)i);
  std::vector<int> colors(L.comps.size(), -1), k(surg.size(), 0);
  CycloElem total = CycloElem::zero(c);
  for (;;) {
    CycloElem coef = CycloElem::one(c);
    for (size_t j = 0; j < surg.size(); ++j) {
      colors[surg[j]] = k[j];
      coef *= d_sign < 0 ? -w[k[j]] : w[k[j]];
    }
    if (!coef.is_zero()) total += coef * bracket(color_link(L, lay, colors), c, -1, stats);
    size_t j = 0;
    while (j < k.size() && ++k[j] == c.d) k[j++] = 0;
    if (j == k.size()) break;
  }
  return total;
}

inline std::vector<std::vector<long>> surgery_matrix(const PDLink& L, const LinkLayout& lay) {
  auto full = framing_matrix(L, lay);
  std::vector<int> surg;
  for (size_t i = 0; i < L.comps.size(); ++i)
    if (L.comps[i].role == Role::Surgery) surg.push_back((int)i);
  std::vector<std::vector<long>> m(surg.size(), std::vector<long>(surg.size()));
  for (size_t a = 0; a < surg.size(); ++a)
    for (size_t b = 0; b < surg.size(); ++b) m[a][b] = full[surg[a]][surg[b]];
  return m;
}

// Divides by <U_+(omega)>^{sigma+} <U_-(omega)>^{sigma-}.  The empty
// presentation gives 1, so no further calibration factor is needed.
inline CycloElem surgery_value(const PDLink& L, const PrimeContext& c, EngineStats* stats = nullptr, int d_sign = 1) {
  LinkLayout lay = layout_link(L);
  CycloElem v = omega_sum(L, lay, c, stats, d_sign);
  auto [sp, sn] = signature_counts(surgery_matrix(L, lay));
  CycloElem up = u_omega(c, 1, d_sign), un = u_omega(c, -1, d_sign);
  if (up.is_zero() || un.is_zero()) throw InvariantError("omega-colored unknot vanishes");
  return v / (up.pow(sp) * un.pow(sn));
}

inline InvariantResult eval_surgery(const PDLink& L, const PrimeContext& c, EngineStats* stats = nullptr) {
  return make_result(surgery_value(L, c, stats));
}

// Mapping torus of the n-th power of the twist along the curve separating
// the genus-2 surface into two one-holed tori.
inline CycloElem mapping_torus_closed(long n, const PrimeContext& c) {
  CycloElem s = CycloElem::zero(c);
  for (long j = 0; j < c.d; ++j) s += CycloElem::zeta_p(c, 2 * n * j * (j + 1)) * ((c.d - j) * (c.d - j));
  return D_elem(c) * s;
}

// Trace over the genus-2 colorings: the twist acts on each by the framing
// eigenvalue of its stick color.
inline CycloElem mapping_torus_trace(long n, const PrimeContext& c) {
  const auto& R = recoupling(c);
  LollipopTree t = canonical_tree(2, {});
  const int stick = t.stick_edge[0];
  std::vector<long> mult(c.p - 1, 0);
  for (const auto& col : enumerate_small_colorings(t, c.p)) ++mult[col.color[stick]];
  CycloElem s = CycloElem::zero(c);
  for (int e = 0; e < c.p - 1; ++e)
    if (mult[e]) s += (n >= 0 ? R.twist(e).pow(n) : R.twist(e).conj().pow(-n)) * mult[e];
  return D_elem(c) * s;
}

inline InvariantResult mapping_torus_invariant(long n, const PrimeContext& c) {
  CycloElem a = mapping_torus_closed(n, c), b = mapping_torus_trace(n, c);
  if (!(a == b)) throw InvariantError("mapping torus: closed form and trace disagree");
  return make_result(a);
}

// ---- lollipop divisibility suite ----------------------------------------

struct LollipopSample {
  int index = 0;
  int lollipops = 0;
  int sum_a = 0;
  int v_circles = 0;
  bool split_basic = false;
  CycloElem value;
  long valuation = 0;
  int bound = 0;
  bool ok = false;
};

struct LollipopReport {
  unsigned seed = 0;
  int p = 0;
  std::vector<LollipopSample> samples;
  int failures = 0;
  int split_checked = 0;
  int split_failures = 0;
  int redrawn = 0;  // draws rejected by the width cap
};

namespace detail {

// Builds one random v-graph.  Tags pair strand ends that must be capped
// together, so loops stay loops; v circles have negative tags and count as
// color 1 in every choice, so all masks draw the same graph.  vmask picks which v circles carry color 1
// (the others are drawn with color 0).
struct VGraphBuild {
  ColoredDiagram dg;
  int lollipops = 0, sum_a = 0, v_circles = 0;
};

inline VGraphBuild build_vgraph(unsigned seed, int p, unsigned vmask, bool split_basic) {
  std::mt19937 rng(seed);
  MorseBuilder b;
  std::vector<int> tag;
  int next = 0;
  VGraphBuild out;
  const int d = (p - 1) / 2;
  auto load = [&]() {
    int s = 0;
    for (int i = 0; i < b.width(); ++i) s += tag[i] < 0 ? 1 : b.color(i);
    return s;
  };
  auto rnd = [&](int n) { return (int)(rng() % (unsigned)n); };
  auto loop_color = [&](int a) {
    // loop color n >= a with (n, n, 2a) admissible
    std::vector<int> ok;
    for (int n = a; n <= p - 2; ++n)
      if (admissible(n, n, 2 * a, p)) ok.push_back(n);
    return ok[rnd((int)ok.size())];
  };
  const int budget = 12;
  const int parts = 1 + rnd(3);
  for (int k = 0; k < parts; ++k) {
    const int pos = rnd(b.width() + 1);
    const int kind = k == 0 ? rnd(2) : rnd(4);
    const int a = 1 + rnd(std::max(1, std::min(d - 1, (p - 2) / 2)));
    if (kind == 0) {
      // two loops on one stick
      int n1 = loop_color(a), n2 = loop_color(a);
      if (load() + 2 * n1 + 2 * n2 > budget) continue;
      b.cup(pos, 2 * a).split(pos, n1, n1).split(pos + 2, n2, n2);
      int t1 = next++, t2 = next++;
      tag.insert(tag.begin() + pos, {t1, t1, t2, t2});
      out.lollipops += 2;
      out.sum_a += 2 * a;
    } else if (kind == 1) {
      // a lollipop hanging off a closed strand
      int c = 1 + rnd(2);
      if (!admissible(c, c, 2 * a, p)) continue;
      int n = loop_color(a);
      if (load() + 2 * c + 2 * n > budget) continue;
      b.cup(pos, c).split(pos, c, 2 * a).split(pos + 1, n, n);
      int ts = next++, tl = next++;
      tag.insert(tag.begin() + pos, {ts, tl, tl, ts});
      out.lollipops += 1;
      out.sum_a += a;
    } else if (kind == 2) {
      if (load() + 2 > budget) continue;
      const int idx = out.v_circles++;
      b.cup(pos, (vmask >> idx) & 1u ? 1 : 0);
      tag.insert(tag.begin() + pos, {-1 - idx, -1 - idx});
    } else {
      int c = 1 + rnd(2);
      if (load() + 2 * c > budget) continue;
      b.cup(pos, c);
      int t = next++;
      tag.insert(tag.begin() + pos, {t, t});
    }
  }
  if (b.width() == 0) {
    int n = loop_color(1);
    b.cup(0, 2).split(0, n, n).split(2, n, n);
    tag = {0, 0, 1, 1};
    out.lollipops = 2;
    out.sum_a = 2;
  }
  auto cross = [&](int i) {
    b.cross(i, rng() % 2);
    std::swap(tag[i], tag[i + 1]);
  };
  const int braid = 4 + rnd(9);
  for (int k = 0; k < braid && b.width() > 1; ++k) cross(rnd(b.width() - 1));
  if (split_basic) {
    // a basic lollipop whose loop bounds a disk missing everything else
    int at = -1;
    for (int i = 0; i < b.width() && at < 0; ++i)
      if (tag[i] >= 0 && b.color(i) >= 1 && admissible(b.color(i), b.color(i), 2, p)) at = i;
    if (at < 0) {
      b.cup(0, 1);
      tag.insert(tag.begin(), {next, next});
      ++next;
      at = 0;
    }
    b.split(at, b.color(at), 2).split(at + 1, 1, 1).cap(at + 1);
    out.lollipops += 1;
    out.sum_a += 1;
  }
  while (b.width() > 0) {
    int done = -1;
    for (int i = 0; i + 1 < b.width() && done < 0; ++i)
      if (tag[i] == tag[i + 1]) done = i;
    if (done >= 0) {
      b.cap(done);
      tag.erase(tag.begin() + done, tag.begin() + done + 2);
      continue;
    }
    // move the strand at the closest partner pair one step inward
    int best = -1, gap = 1 << 30;
    for (int i = 0; i < b.width(); ++i)
      for (int j = i + 1; j < b.width(); ++j)
        if (tag[i] == tag[j] && j - i < gap) best = i, gap = j - i;
    cross(best);
  }
  out.dg = b.build();
  return out;
}

}  // namespace detail

inline LollipopSample lollipop_sample(unsigned seed, int index, const PrimeContext& c, bool split_basic) {
  LollipopSample s;
  s.index = index;
  s.split_basic = split_basic;
  auto probe = detail::build_vgraph(seed, c.p, 0, split_basic);
  s.lollipops = probe.lollipops;
  s.sum_a = probe.sum_a;
  s.v_circles = probe.v_circles;
  // v = h^{-1}(2 + z): expand every v circle
  CycloElem total = CycloElem::zero(c);
  const unsigned m = (unsigned)s.v_circles;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    auto g = detail::build_vgraph(seed, c.p, mask, split_basic);
    long twos = (long)m - __builtin_popcount(mask);
    total += bracket(g.dg, c) * (1L << twos);
  }
  s.value = total / CycloElem::h(c).pow(m);
  s.bound = ceil_half(s.sum_a);
  if (!s.value.in_O()) {
    s.ok = false;
    s.valuation = -1;
    return s;
  }
  s.valuation = h_valuation(s.value);
  s.ok = s.valuation >= s.bound && (!split_basic || s.value.is_zero());
  return s;
}

// Every sample must be divisible by h^ceil(sum a / 2); every fifth sample
// also carries a split basic lollipop and must vanish.  Draws too wide for
// the sweep cap are replaced by the next draw.
inline LollipopReport lollipop_divisibility_suite(const PrimeContext& c, int samples, unsigned seed) {
  LollipopReport r;
  r.seed = seed;
  r.p = c.p;
  std::mt19937 master(seed);
  for (int i = 0; i < samples; ++i) {
    const bool split = i % 5 == 4;
    LollipopSample x;
    for (;;) {
      try {
        x = lollipop_sample(master(), i, c, split);
        break;
      } catch (const WidthExceeded&) {
        ++r.redrawn;
      }
    }
    if (split) {
      ++r.split_checked;
      if (!x.value.is_zero()) ++r.split_failures;
    }
    if (!x.ok) ++r.failures;
    r.samples.push_back(std::move(x));
  }
  return r;
}

}  // namespace so3

#endif
