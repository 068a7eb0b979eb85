// Four-point tangles on two color-2 strands and random closures of them.
//
// Ends: two on top, two on the bottom.  L0 joins the top pair and the
// bottom pair, Linf runs both strands straight down, Lplus crosses them
// with L0 as its A-smoothing.  X joins every end to both of its
// neighbours by a color-1 arc.  VBar is the I with a vertical middle edge,
// HBar the one with a horizontal middle edge; all I edges are colored 2.
#ifndef SO3_LOCAL_HPP
#define SO3_LOCAL_HPP

#include <random>
#include <vector>

#include "so3/bracket.hpp"

namespace so3 {

enum class Local { L0, Linf, Lplus, X, HBar, VBar };

inline const char* local_name(Local t) {
  switch (t) {
    case Local::L0: return "L0";
    case Local::Linf: return "Linf";
    case Local::Lplus: return "L+";
    case Local::X: return "X";
    case Local::HBar: return "hbar";
    case Local::VBar: return "vbar";
  }
  return "?";
}

// Replaces the color-2 strands at pos, pos+1 of a builder row by the tangle.
inline void apply_local(MorseBuilder& b, int pos, Local t) {
  if (b.color(pos) != 2 || b.color(pos + 1) != 2) throw DiagramError("local tangle needs two color-2 strands");
  switch (t) {
    case Local::L0: b.cap(pos).cup(pos, 2); break;
    case Local::Linf: break;
    case Local::Lplus: b.cross(pos, true); break;
    case Local::X:
      b.split(pos, 1, 1).split(pos + 2, 1, 1).cap(pos + 1).cup(pos + 1, 1).merge(pos, 2).merge(pos + 1, 2);
      break;
    case Local::HBar: b.split(pos, 2, 2).merge(pos + 1, 2); break;
    case Local::VBar: b.merge(pos, 2).split(pos, 2, 2); break;
  }
}

inline ColoredDiagram local_tangle(Local t) {
  MorseBuilder b;
  b.top({2, 2});
  apply_local(b, 0, t);
  b.bottom();
  return b.build();
}

// A random closure: color-1 and color-2 arcs braided around the slot, the
// tangle, then more braiding and caps.  The same seed always yields the
// same surroundings, so different tangles see the same closure.
class RandomClosure {
 public:
  explicit RandomClosure(unsigned seed) : seed_(seed) {}

  ColoredDiagram close(Local t) const {
    std::mt19937 rng(seed_);
    MorseBuilder b;
    b.cup(0, 2).cup(2, 2);
    const int extra = (int)(rng() % 2);
    if (extra) b.cup((int)(rng() % 5), 1);
    braid(b, rng, 2 + (int)(rng() % 4));
    int pos = -1;
    std::vector<int> cand;
    for (int i = 0; i + 1 < b.width(); ++i)
      if (b.color(i) == 2 && b.color(i + 1) == 2) cand.push_back(i);
    if (cand.empty()) throw DiagramError("closure has no slot");
    pos = cand[rng() % cand.size()];
    apply_local(b, pos, t);
    braid(b, rng, 1 + (int)(rng() % 4));
    int guard = 0;
    while (b.width() > 0) {
      std::vector<int> caps;
      for (int i = 0; i + 1 < b.width(); ++i)
        if (b.color(i) == b.color(i + 1)) caps.push_back(i);
      if (!caps.empty() && (rng() % 4 != 0 || ++guard > 20)) {
        b.cap(caps[rng() % caps.size()]);
      } else {
        b.cross((int)(rng() % (b.width() - 1)), rng() % 2);
      }
    }
    return b.build();
  }

 private:
  static void braid(MorseBuilder& b, std::mt19937& rng, int len) {
    for (int k = 0; k < len; ++k) b.cross((int)(rng() % (b.width() - 1)), rng() % 2);
  }
  unsigned seed_;
};

}  // namespace so3

#endif
