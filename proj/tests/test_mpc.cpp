#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mpcd/generators.hpp"
#include "mpcd/mpc.hpp"

using namespace mpcd;

namespace {
MachineSpec small_spec(int64_t s, int64_t m = 1024) {
  MachineSpec spec;
  spec.space_words = s;
  spec.machine_count = m;
  return spec;
}
}  // namespace

TEST_CASE("grouped distribution") {
  Cluster cluster(small_spec(16));
  SUBCASE("one key, chunk 4") {
    Placement p = cluster.distribute_grouped({10}, 4);
    REQUIRE(p.machines.size() == 3);
    CHECK(p.machines[0].load() == 4);
    CHECK(p.machines[1].load() == 4);
    CHECK(p.machines[2].load() == 2);
    CHECK(p.max_load == 4);
  }
  SUBCASE("two keys, one machine each") {
    Placement p = cluster.distribute_grouped({2, 2}, 4);
    REQUIRE(p.machines.size() == 2);
    CHECK(p.machines[0].group == 0);
    CHECK(p.machines[1].group == 1);
    // groups occupy contiguous disjoint ranges
    CHECK(p.machines[0].end <= p.machines[1].begin);
  }
  SUBCASE("chunk beyond machine space is rejected") {
    CHECK_THROWS_WITH_AS(cluster.distribute_grouped({4}, 17),
                         doctest::Contains("SpaceExceeded"), Error);
  }
}

TEST_CASE("global sort") {
  Cluster cluster(small_spec(1, 8));
  SUBCASE("sorts and respects capacity") {
    std::vector<int> items{3, 1, 2};
    Placement p = cluster.global_sort(items, [](int x) { return x; });
    CHECK(items == std::vector<int>{1, 2, 3});
    CHECK(p.max_load == 1);
    CHECK(p.machines.size() == 3);
  }
  SUBCASE("already sorted input is unchanged but still charged") {
    std::vector<int> items{1, 2, 3};
    int64_t rounds_before = cluster.rounds();
    cluster.global_sort(items, [](int x) { return x; });
    CHECK(items == std::vector<int>{1, 2, 3});
    CHECK(cluster.rounds() == rounds_before + cluster.charges().sort_rounds);
  }
  SUBCASE("stability") {
    std::vector<std::pair<int, int>> items{{1, 0}, {0, 1}, {1, 2}, {0, 3}};
    cluster.global_sort(items, [](const std::pair<int, int>& x) { return x.first; });
    CHECK(items == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 0}, {1, 2}});
  }
  SUBCASE("capacity bound") {
    Cluster tiny(small_spec(1, 2));
    std::vector<int> items{5, 4, 3};
    CHECK_THROWS_WITH_AS(tiny.global_sort(items, [](int x) { return x; }),
                         doctest::Contains("SpaceExceeded"), Error);
  }
}

TEST_CASE("prefix sums") {
  Cluster cluster(small_spec(8));
  CHECK(cluster.prefix_sums({1, 2, 3}) == std::vector<int64_t>{1, 3, 6});
  CHECK(cluster.prefix_sums({0, 0, 0}) == std::vector<int64_t>{0, 0, 0});
  CHECK(cluster.prefix_sums({5}) == std::vector<int64_t>{5});
}

TEST_CASE("ball collection") {
  SUBCASE("P5 radius 2 from the middle") {
    Graph p5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Cluster cluster(small_spec(64));
    auto balls = cluster.collect_balls(p5, 2, {2});
    REQUIRE(balls.size() == 1);
    CHECK(balls[0].nodes == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(balls[0].edges.size() == 4);
  }
  SUBCASE("radius 0 is the bare center") {
    Graph p5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Cluster cluster(small_spec(64));
    auto balls = cluster.collect_balls(p5, 0, {3});
    REQUIRE(balls.size() == 1);
    CHECK(balls[0].nodes == std::vector<NodeId>{3});
    CHECK(balls[0].edges.empty());
  }
  SUBCASE("clique exceeding machine space") {
    // K_{S+2} with S words: the radius-1 ball is the whole clique
    int64_t s = 6;
    std::vector<Edge> edges;
    NodeId n = static_cast<NodeId>(s + 2);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
    }
    Graph k = Graph::from_edges(n, std::move(edges));
    Cluster cluster(small_spec(s));
    CHECK_THROWS_WITH_AS(cluster.collect_balls(k, 1, {0}),
                         doctest::Contains("BallTooLarge"), Error);
  }
  SUBCASE("oracle equivalence on random graphs up to 50 nodes") {
    for (uint64_t seed : {1ull, 7ull, 42ull}) {
      GenSpec spec;
      spec.kind = "gnp";
      spec.n = 50;
      spec.prob_num = 1;
      spec.prob_den = 12;
      spec.seed = seed;
      Graph g = generate_graph(spec);
      // independent oracle: Floyd-Warshall distances
      std::vector<std::vector<int>> dist(
          50, std::vector<int>(50, 1 << 20));
      for (NodeId v = 0; v < 50; ++v) dist[v][v] = 0;
      for (const Edge& e : g.edges()) dist[e.u][e.v] = dist[e.v][e.u] = 1;
      for (int w = 0; w < 50; ++w) {
        for (int u = 0; u < 50; ++u) {
          for (int v = 0; v < 50; ++v) {
            dist[u][v] = std::min(dist[u][v], dist[u][w] + dist[w][v]);
          }
        }
      }
      Cluster cluster(small_spec(1 << 16));
      for (int r : {1, 2, 3}) {
        std::vector<NodeId> centers{0, 7, 23};
        auto balls = cluster.collect_balls(g, r, centers);
        for (size_t i = 0; i < centers.size(); ++i) {
          std::vector<NodeId> expect;
          for (NodeId v = 0; v < 50; ++v) {
            if (dist[centers[i]][v] <= r) expect.push_back(v);
          }
          CHECK(balls[i].nodes == expect);
          int64_t expect_edges = 0;
          for (const Edge& e : g.edges()) {
            if (dist[centers[i]][e.u] <= r && dist[centers[i]][e.v] <= r) {
              ++expect_edges;
            }
          }
          CHECK(static_cast<int64_t>(balls[i].edges.size()) == expect_edges);
        }
      }
    }
  }
}

TEST_CASE("round accounting and space guard") {
  Cluster cluster(small_spec(8, 4));
  cluster.load_input(20);
  CHECK_THROWS_WITH_AS(cluster.load_input(64),
                       doctest::Contains("SpaceExceeded"), Error);
  cluster.charge("custom", 3, 8, 100);
  CHECK(cluster.rounds() == 3);
  CHECK(cluster.high_water() == 8);
  CHECK_THROWS_WITH_AS(cluster.charge("overflow", 1, 9, 1),
                       doctest::Contains("SpaceExceeded"), Error);
  std::string csv = cluster.round_log_csv();
  CHECK(csv.find("custom") != std::string::npos);
  CHECK(csv.find("round,primitive") == 0);
}
