#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mpcd/generators.hpp"
#include "mpcd/lowdeg.hpp"
#include "mpcd/oracle.hpp"

using namespace mpcd;

namespace {
AlgoConfig config(int inv_delta) {
  AlgoConfig cfg;
  cfg.delta = Delta{inv_delta};
  return cfg;
}
}  // namespace

TEST_CASE("distance-2 coloring") {
  AlgoConfig cfg = config(2);
  SUBCASE("edgeless graph is monochromatic") {
    Cluster cluster(cfg.spec, cfg.charges);
    Graph g = Graph::from_edges(6, {});
    Distance2Coloring d2 = distance2_coloring(g, cfg, cluster);
    for (Color c : d2.chi) CHECK(c == d2.chi[0]);
    CHECK(d2.color_count == 1);
  }
  SUBCASE("P4 is valid at distance two") {
    Cluster cluster(cfg.spec, cfg.charges);
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    Distance2Coloring d2 = distance2_coloring(g, cfg, cluster);
    CHECK(distance2_valid(g, d2.chi));
  }
  SUBCASE("K4 needs four distinct colors") {
    Cluster cluster(cfg.spec, cfg.charges);
    Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    Distance2Coloring d2 = distance2_coloring(g, cfg, cluster);
    std::set<Color> used(d2.chi.begin(), d2.chi.end());
    CHECK(used.size() == 4);
    CHECK(distance2_valid(g, d2.chi));
  }
  SUBCASE("bounded-degree random graphs stay valid and capped") {
    for (uint64_t seed : {1ull, 4ull}) {
      GenSpec spec;
      spec.kind = "random_regular";
      spec.n = 64;
      spec.param_a = 4;
      spec.seed = seed;
      Graph g = generate_graph(spec);
      Cluster cluster(cfg.spec, cfg.charges);
      Distance2Coloring d2 = distance2_coloring(g, cfg, cluster);
      CHECK(distance2_valid(g, d2.chi));
      CHECK(Bigint(d2.color_count) <=
            Bigint(cfg.d2_color_cap) * bigint_pow(Bigint(g.max_degree()), 4));
    }
  }
}

TEST_CASE("compressed stages") {
  SUBCASE("single edge: one endpoint joins for every sequence") {
    AlgoConfig cfg = config(2);
    Cluster cluster(cfg.spec, cfg.charges);
    Graph g = Graph::from_edges(2, {{0, 1}});
    Distance2Coloring d2 = distance2_coloring(g, cfg, cluster);
    std::vector<char> present(2, 1);
    StagePlan plan = make_stage_plan(g, present, d2.color_count, cfg,
                                     cluster, nullptr);
    // direct enumeration over H*: every single-phase sequence clears the edge
    SeedIter it(plan.hstar);
    do {
      std::vector<int> status =
          run_phases(g, present, d2.chi, plan.hstar, {it.seed()});
      CHECK(((status[0] > 0) ^ (status[1] > 0)));
      CHECK(status[0] != 0);
      CHECK(status[1] != 0);
    } while (it.next());
    CompressedStageResult st = compressed_stage(g, present, d2.chi, plan,
                                                cfg, cluster, true, nullptr);
    CHECK(st.edges_after == 0);
    CHECK(st.is_union.size() == 1);
  }
  SUBCASE("edgeless stage returns every remaining node") {
    AlgoConfig cfg = config(2);
    Cluster cluster(cfg.spec, cfg.charges);
    Graph g = Graph::from_edges(4, {});
    std::vector<char> present{1, 0, 1, 1};
    std::vector<Color> chi{0, 0, 0, 0};
    StagePlan plan = make_stage_plan(g, present, 1, cfg, cluster, nullptr);
    CompressedStageResult st = compressed_stage(g, present, chi, plan, cfg,
                                                cluster, true, nullptr);
    CHECK(st.is_union == std::vector<NodeId>{0, 2, 3});
  }
}

TEST_CASE("ball-local simulation equals the global one") {
  for (uint64_t seed : {3ull, 8ull, 21ull}) {
    GenSpec spec;
    spec.kind = "gnp";
    spec.n = 40;
    spec.prob_num = 1;
    spec.prob_den = 14;
    spec.seed = seed;
    Graph g = generate_graph(spec);
    AlgoConfig cfg = config(2);
    Cluster cluster(cfg.spec, cfg.charges);
    Distance2Coloring d2 = distance2_coloring(g, cfg, cluster);
    HashFamily hstar;
    hstar.k = 2;
    hstar.p = next_prime(std::max<int64_t>(d2.color_count, 8));
    hstar.domain_size = hstar.p;
    hstar.range_size = hstar.p;
    std::vector<char> present(static_cast<size_t>(g.node_count()), 1);
    SplitMix64 rng(seed * 97 + 1);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Seed> seq;
      int ell = 1 + static_cast<int>(rng.below(2));
      for (int i = 0; i < ell; ++i) {
        seq.push_back(Seed{{static_cast<int64_t>(rng.below(hstar.p)),
                            static_cast<int64_t>(rng.below(hstar.p))}});
      }
      std::vector<int> global = run_phases(g, present, d2.chi, hstar, seq);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        CHECK(ball_local_status(g, present, d2.chi, hstar, seq, v) ==
              global[v]);
      }
    }
  }
}

TEST_CASE("lowdeg MIS end to end") {
  SUBCASE("cycle C8") {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < 8; ++v) {
      edges.push_back({std::min<NodeId>(v, (v + 1) % 8),
                       std::max<NodeId>(v, (v + 1) % 8)});
    }
    Graph g = Graph::from_edges(8, std::move(edges));
    AlgoConfig cfg = config(2);
    Cluster cluster(cfg.spec, cfg.charges);
    LowdegMisResult r = mis_lowdeg(g, cfg, cluster);
    CHECK(verify_mis(g, r.mis).pass);
    CHECK(r.stages.size() >= 1);
    for (const StageRow& row : r.stages) {
      CHECK(row.edges_after < row.edges_before);
    }
  }
  SUBCASE("disjoint edges resolve in one stage") {
    GenSpec spec;
    spec.kind = "disjoint_edges";
    spec.n = 16;
    Graph g = generate_graph(spec);
    AlgoConfig cfg = config(2);
    Cluster cluster(cfg.spec, cfg.charges);
    LowdegMisResult r = mis_lowdeg(g, cfg, cluster);
    CHECK(r.stages.size() == 1);
    CHECK(r.mis.size() == 8);
    CHECK(verify_mis(g, r.mis).pass);
  }
  SUBCASE("empty graph needs zero stages") {
    Graph g = Graph::from_edges(5, {});
    AlgoConfig cfg = config(2);
    Cluster cluster(cfg.spec, cfg.charges);
    LowdegMisResult r = mis_lowdeg(g, cfg, cluster);
    CHECK(r.mis.size() == 5);
    CHECK(r.stages.empty());
  }
  SUBCASE("stage choice is deterministic") {
    GenSpec spec;
    spec.kind = "random_regular";
    spec.n = 48;
    spec.param_a = 3;
    spec.seed = 12;
    Graph g = generate_graph(spec);
    AlgoConfig cfg = config(2);
    Cluster c1(cfg.spec, cfg.charges);
    Cluster c2(cfg.spec, cfg.charges);
    LowdegMisResult a = mis_lowdeg(g, cfg, c1);
    LowdegMisResult b = mis_lowdeg(g, cfg, c2);
    CHECK(a.mis == b.mis);
    REQUIRE(a.stages.size() == b.stages.size());
    for (size_t i = 0; i < a.stages.size(); ++i) {
      CHECK(a.stages[i].sequence_index == b.stages[i].sequence_index);
    }
  }
}

TEST_CASE("dispatchers route on the degree threshold") {
  AlgoConfig cfg = config(2);
  SUBCASE("high-degree star goes to the log-n modules") {
    std::vector<Edge> edges;
    for (NodeId v = 1; v < 30; ++v) edges.push_back({0, v});
    Graph g = Graph::from_edges(30, std::move(edges));
    // Delta = 29, Delta^2 = 841 > 30: high-degree route
    Cluster cluster(cfg.spec, cfg.charges);
    DispatchMisResult r = dispatch_mis(g, cfg, cluster);
    CHECK(!r.used_lowdeg);
    CHECK(verify_mis(g, r.mis).pass);
  }
  SUBCASE("bounded-degree grid goes to the compressed stages") {
    GenSpec spec;
    spec.kind = "grid";
    spec.n = 36;
    spec.param_a = 6;
    spec.param_b = 6;
    Graph g = generate_graph(spec);
    // Delta = 4, Delta^2 = 16 <= 36
    Cluster cluster(cfg.spec, cfg.charges);
    DispatchMisResult r = dispatch_mis(g, cfg, cluster);
    CHECK(r.used_lowdeg);
    CHECK(verify_mis(g, r.mis).pass);
  }
  SUBCASE("matching on P5 through the line graph") {
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Cluster cluster(cfg.spec, cfg.charges);
    DispatchMatchingResult r = dispatch_matching(g, cfg, cluster);
    CHECK(r.used_lowdeg);
    CHECK(verify_matching(g, r.matching).pass);
  }
}
