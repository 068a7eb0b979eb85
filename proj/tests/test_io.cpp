#include <gtest/gtest.h>

#include "so3/invariants.hpp"
#include "so3/io.hpp"

using namespace so3;
using C = CycloElem;

TEST(Io, CycloJsonRoundTrip) {
  for (int p : {5, 7, 13}) {
    const auto& c = make_context(p);
    for (const C& x : {C::zero(c), C::one(c), D_elem(c), C::h(c).inverse(), C::imag_unit(c) * C::qint(c, 3) / C(c, 7L)}) {
      auto j = to_json(x);
      EXPECT_EQ(j["basis"], "zeta4p-power-basis");
      EXPECT_EQ(cyclo_from_json(nlohmann::json::parse(j.dump())), x);
    }
  }
}

TEST(Io, CycloJsonRejectsOtherBasis) {
  auto j = to_json(C::one(make_context(5)));
  j["basis"] = "zeta-p";
  EXPECT_THROW(cyclo_from_json(j), FormatError);
}

TEST(Io, PdRoundTrip) {
  const std::string text =
      "# Hopf link\n"
      "X 4 1 3 2\n"
      "X 2 3 1 4\n"
      "component a surgery framing=1 color=0 arc=1\n"
      "component b cargo framing=-2 color=3 arc=3\n"
      "unknot u axis framing=0 color=2\n";
  PDLink L = parse_pd(text);
  ASSERT_EQ(L.crossings.size(), 2u);
  ASSERT_EQ(L.comps.size(), 3u);
  EXPECT_EQ(L.comps[1].role, Role::Cargo);
  EXPECT_EQ(L.comps[1].framing, -2);
  EXPECT_EQ(L.comps[2].seed_arc, -1);
  EXPECT_EQ(write_pd(L), text);
  EXPECT_EQ(parse_pd(write_pd(L)), L);
}

TEST(Io, PdDefaultsAndErrors) {
  PDLink L = parse_pd("unknot U surgery\n");
  EXPECT_EQ(L.comps[0].framing, 0);
  EXPECT_EQ(L.comps[0].color, 1);
  EXPECT_THROW(parse_pd("X 1 2 3\n"), FormatError);
  EXPECT_THROW(parse_pd("component K surgery framing=1\n"), FormatError);
  EXPECT_THROW(parse_pd("component K martian arc=1\n"), FormatError);
  EXPECT_THROW(parse_pd("Y 1 2 3 4\n"), FormatError);
  EXPECT_THROW(parse_pd("unknot U surgery framing=x\n"), FormatError);
  EXPECT_THROW(parse_pd("unknot U surgery\nunknot U cargo\n"), FormatError);
}

TEST(Io, PdFileEvaluates) {
  PDLink L = parse_pd("X 4 1 3 2\nX 2 3 1 4\ncomponent a surgery framing=1 arc=1\ncomponent b surgery framing=1 arc=3\n");
  const auto& c = make_context(5);
  EXPECT_EQ(eval_surgery(L, c).value, D_elem(c));
}

TEST(Io, TreeRoundTrip) {
  for (int g = 0; g <= 3; ++g)
    for (const auto& pts : std::vector<std::vector<int>>{{}, {2}, {1, 1}, {2, 3, 1}}) {
      if (g == 0 && pts.empty()) continue;
      LollipopTree t = canonical_tree(g, pts);
      std::string s = write_tree(t);
      LollipopTree u = parse_tree(s);
      EXPECT_EQ(write_tree(u), s);
      EXPECT_EQ(enumerate_small_colorings(u, 7).size(), enumerate_small_colorings(t, 7).size());
    }
}

TEST(Io, TreeErrors) {
  EXPECT_THROW(parse_tree("vertices 1\n"), FormatError);
  EXPECT_THROW(parse_tree("tree genus=1\nvertices 2\nedge loop 0 1\n"), FormatError);
  EXPECT_THROW(parse_tree("tree genus=0 points=1\nvertices 2\nedge wobbly 0 1\n"), FormatError);
}
