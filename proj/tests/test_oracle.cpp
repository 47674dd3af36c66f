#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpcd/oracle.hpp"

using namespace mpcd;

namespace {
Graph c5() {
  return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
}
}  // namespace

TEST_CASE("greedy baselines are canonical") {
  CHECK(greedy_mis(c5()) == std::vector<NodeId>{0, 2});
  Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  std::vector<Edge> m = greedy_matching(p4);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == Edge{0, 1});
  CHECK(m[1] == Edge{2, 3});
  Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  PaletteMap pal{{1, 2, 3}, {1, 2, 3}, {1, 2, 3}};
  CHECK(greedy_list_coloring(k3, pal) == std::vector<Color>{1, 2, 3});
  PaletteMap tiny{{1}, {1}, {1}};
  CHECK_THROWS_WITH_AS(greedy_list_coloring(k3, tiny),
                       doctest::Contains("PaletteTooSmall"), Error);
}

TEST_CASE("verifiers pass greedy outputs and produce witnesses") {
  Graph g = c5();
  CHECK(verify_mis(g, greedy_mis(g)).pass);
  CHECK(verify_matching(g, greedy_matching(g)).pass);
  PaletteMap pal(5, Palette{0, 1, 2});
  CHECK(verify_coloring(g, pal, greedy_list_coloring(g, pal)).pass);

  SUBCASE("empty set on K2 is not maximal") {
    Graph k2 = Graph::from_edges(2, {{0, 1}});
    VerificationReport r = verify_mis(k2, {});
    CHECK(!r.pass);
    CHECK(r.witness == "node 0 addable");
  }
  SUBCASE("adjacent pair is not independent") {
    VerificationReport r = verify_mis(g, {0, 1});
    CHECK(!r.pass);
    CHECK(r.witness.find("inside the set") != std::string::npos);
  }
  SUBCASE("non-edges and double matches rejected") {
    VerificationReport r = verify_matching(g, {{0, 2}});
    CHECK(!r.pass);
    CHECK(r.witness.find("not an edge") != std::string::npos);
    r = verify_matching(g, {{0, 1}, {1, 2}});
    CHECK(!r.pass);
    CHECK(r.witness.find("matched twice") != std::string::npos);
  }
  SUBCASE("monochromatic edge carries the witness") {
    PaletteMap pal2(5, Palette{0, 1, 2});
    std::vector<Color> bad{0, 0, 1, 2, 1};
    VerificationReport r = verify_coloring(g, pal2, bad);
    CHECK(!r.pass);
    CHECK(r.witness.find("(0,1)") != std::string::npos);
  }
  SUBCASE("palette membership is enforced") {
    PaletteMap pal3(5, Palette{0, 1, 2});
    std::vector<Color> off{0, 1, 2, 0, 9};
    VerificationReport r = verify_coloring(g, pal3, off);
    CHECK(!r.pass);
    CHECK(r.witness.find("outside its palette") != std::string::npos);
  }
}

TEST_CASE("family statistics by enumeration") {
  HashFamily f = make_hash_family(2, 7, 7);
  CHECK(enumerate_family_statistics(f, [](const Seed&) { return true; },
                                    1 << 20) == Rational(1));
  Rational point = enumerate_family_statistics(
      f, [&](const Seed& s) { return eval_field(f, s, 3) == 5; }, 1 << 20);
  CHECK(point == Rational(1, 7));
  CHECK_THROWS_WITH_AS(
      enumerate_family_statistics(f, [](const Seed&) { return true; }, 4),
      doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("exhaustive maximal independent sets of C5") {
  auto all = all_maximal_independent_sets(c5());
  CHECK(all.size() == 5);
  for (const auto& set : all) CHECK(set.size() == 2);
}

TEST_CASE("distance-2 validity checker") {
  Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(distance2_valid(p3, {0, 1, 2}));
  CHECK(!distance2_valid(p3, {0, 1, 0}));  // endpoints are 2 apart
}

TEST_CASE("color-phase reference simulation") {
  // P3 with distinct colors; phase priorities make node 0 the minimum.
  Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  std::vector<Color> chi{0, 1, 2};
  std::vector<std::vector<int64_t>> priorities{{0, 5, 1}};
  std::vector<int> status = simulate_color_phases(p3, chi, priorities);
  CHECK(status[0] == 1);   // joined in phase 1
  CHECK(status[1] == -1);  // removed as a neighbor
  CHECK(status[2] == 1);   // local minimum among survivors
}
