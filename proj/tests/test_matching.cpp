#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mpcd/generators.hpp"
#include "mpcd/matching.hpp"
#include "mpcd/objectives.hpp"
#include "mpcd/oracle.hpp"

using namespace mpcd;

namespace {

AlgoConfig config(int inv_delta) {
  AlgoConfig cfg;
  cfg.delta = Delta{inv_delta};
  return cfg;
}

Cluster make_cluster(const AlgoConfig& cfg) {
  return Cluster(cfg.spec, cfg.charges);
}

// Candidate-matching structure over an explicit E* for family enumeration.
LocalMinMatchingObjective build_objective(const Graph& g,
                                          const std::vector<EdgeId>& estar,
                                          const std::vector<NodeId>& heavy,
                                          const HashFamily& fam) {
  std::vector<int64_t> dstar(static_cast<size_t>(g.node_count()), 0);
  for (EdgeId e : estar) {
    ++dstar[g.edge(e).u];
    ++dstar[g.edge(e).v];
  }
  std::vector<std::vector<int32_t>> at_node(static_cast<size_t>(g.node_count()));
  for (size_t i = 0; i < estar.size(); ++i) {
    at_node[g.edge(estar[i]).u].push_back(static_cast<int32_t>(i));
    at_node[g.edge(estar[i]).v].push_back(static_cast<int32_t>(i));
  }
  std::vector<int64_t> adj_off{0};
  std::vector<int32_t> adj;
  for (size_t i = 0; i < estar.size(); ++i) {
    const Edge& e = g.edge(estar[i]);
    for (NodeId v : {e.u, e.v}) {
      for (int32_t o : at_node[v]) {
        if (o != static_cast<int32_t>(i)) adj.push_back(o);
      }
    }
    adj_off.push_back(static_cast<int64_t>(adj.size()));
  }
  std::vector<int64_t> inc_off{0};
  std::vector<int32_t> inc;
  std::vector<int64_t> weights;
  for (NodeId v : heavy) {
    for (int32_t o : at_node[v]) inc.push_back(o);
    inc_off.push_back(static_cast<int64_t>(inc.size()));
    weights.push_back(g.degree(v));
  }
  std::vector<int64_t> points;
  for (EdgeId e : estar) points.push_back(e);
  return LocalMinMatchingObjective(fam, std::move(points), std::move(adj_off),
                                   std::move(adj), std::move(inc_off),
                                   std::move(inc), std::move(weights));
}

}  // namespace

TEST_CASE("candidate matching per seed: P3, triangle, single edge") {
  HashFamily fam;
  fam.k = 2;
  fam.p = 13;
  fam.domain_size = 13;
  fam.range_size = 13;

  SUBCASE("single edge always selected with both endpoints matched") {
    Graph g = Graph::from_edges(2, {{0, 1}});
    auto obj = build_objective(g, {0}, {0, 1}, fam);
    SeedIter it(fam);
    do {
      auto flags = obj.matching_flags(it.seed());
      CHECK(flags == std::vector<char>{1});
      CHECK(obj.total_value(it.seed()) == 2);  // both degree-1 endpoints
    } while (it.next());
  }
  SUBCASE("P3: every seed yields a matching of size exactly one") {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    auto obj = build_objective(g, {0, 1}, {1}, fam);
    SeedIter it(fam);
    do {
      auto flags = obj.matching_flags(it.seed());
      CHECK(flags[0] + flags[1] == 1);
      // the selected edge carries the smaller (z, id) priority
      int64_t z0 = eval_field(fam, it.seed(), 0);
      int64_t z1 = eval_field(fam, it.seed(), 1);
      bool first_wins = z0 != z1 ? z0 < z1 : true;
      CHECK(flags[0] == (first_wins ? 1 : 0));
    } while (it.next());
  }
  SUBCASE("triangle: unique local minimum") {
    Graph g = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    auto obj = build_objective(g, {0, 1, 2}, {}, fam);
    SeedIter it(fam);
    do {
      auto flags = obj.matching_flags(it.seed());
      CHECK(flags[0] + flags[1] + flags[2] == 1);
    } while (it.next());
  }
}

TEST_CASE("series bound is a true lower bound on the family average") {
  HashFamily fam;
  fam.k = 2;
  fam.p = 31;
  fam.domain_size = 31;
  fam.range_size = 31;
  GenSpec spec;
  spec.kind = "gnp";
  spec.n = 10;
  spec.prob_num = 1;
  spec.prob_den = 3;
  spec.seed = 5;
  Graph g = generate_graph(spec);
  std::vector<EdgeId> estar;
  for (EdgeId e = 0; e < g.edge_count(); ++e) estar.push_back(e);
  std::vector<NodeId> heavy;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) > 0) heavy.push_back(v);
  }
  auto obj = build_objective(g, estar, heavy, fam);
  Rational bound = obj.expectation_lower_bound(nullptr);
  Rational average;
  SeedIter it(fam);
  do {
    average += Rational(obj.total_value(it.seed()));
  } while (it.next());
  average = average / Rational(Bigint(fam.p) * fam.p);
  CHECK(bound <= average);
  CHECK(bound.num() > 0);
}

TEST_CASE("sparsify passthrough for low classes") {
  Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  AlgoConfig cfg = config(2);
  Cluster cluster = make_cluster(cfg);
  HeavySelection sel = select_heavy_class(p4, cfg.delta, SelectionMode::Matching);
  REQUIRE(sel.cls <= 4);
  int64_t rounds_before = cluster.rounds();
  SparsifyEdgesResult sp = sparsify_edges(p4, sel, cfg, cluster);
  CHECK(sp.stages == 0);
  CHECK(sp.estar == sel.seed_edges);
  CHECK(cluster.rounds() == rounds_before);  // zero simulated rounds

  SUBCASE("empty selection passes through to an empty E*") {
    HeavySelection empty;
    empty.mode = SelectionMode::Matching;
    empty.cls = 2;
    SparsifyEdgesResult none = sparsify_edges(p4, empty, cfg, cluster);
    CHECK(none.estar.empty());
    CHECK(none.stages == 0);
  }
}

TEST_CASE("forced one-stage sparsification on a padded star") {
  // n = 64, 1/delta = 7: class thresholds put degree 16 in class 5, so one
  // stage runs; a tiny field keeps the family fully enumerable (exact mode).
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= 16; ++v) edges.push_back({0, v});
  Graph g = Graph::from_edges(64, std::move(edges));
  AlgoConfig cfg = config(7);
  cfg.k_concentration = 2;
  cfg.field_floor = 17;
  cfg.derand.strategy = SeedStrategy::Exact;
  Cluster cluster = make_cluster(cfg);
  HeavySelection sel = select_heavy_class(g, cfg.delta, SelectionMode::Matching);
  REQUIRE(sel.cls == 5);
  SparsifyEdgesResult sp = sparsify_edges(g, sel, cfg, cluster);
  CHECK(sp.stages == 1);
  REQUIRE(sp.certificates.size() == 1);
  CHECK(sp.certificates[0].achieved >= sp.certificates[0].bound);
  // recheck the degree bound the stage is meant to deliver: if the chosen
  // seed made every machine good, the center degree obeys the per-machine
  // window sums directly
  const ProgressCertificate& cert = sp.certificates[0];
  HashFamily fam;
  fam.k = cfg.k_concentration;
  fam.p = 17;
  fam.domain_size = g.edge_count();
  fam.range_size = fam.p;
  int64_t threshold = sampling_threshold(fam.p, 64, 7);
  int64_t kept = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    kept += eval_field(fam, cert.seed, e) < threshold;
  }
  CHECK(kept == static_cast<int64_t>(sp.estar.size()));
  // Window recheck: when the chosen seed made every machine good, the
  // kept degree is at most the summed upper window edges of the center's
  // chunked machines.
  int64_t machine_total = 20;  // 2 type-A center + 16 leaf + 2 type-B chunks
  if (cert.achieved == Rational(machine_total)) {
    int64_t t4 = pow_ceil(64, 4, 7);
    Rational allowed;
    for (int64_t covered = 0; covered < 16;) {
      int64_t t = std::min<int64_t>(t4, 16 - covered);
      allowed += Rational(t * threshold, fam.p) +
                 Rational(concentration_deviation(64, 7, t));
      covered += t;
    }
    CHECK(Rational(static_cast<int64_t>(sp.estar.size())) <= allowed);
  }
}

TEST_CASE("maximal matching end to end") {
  SUBCASE("path P4") {
    Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    AlgoConfig cfg = config(2);
    Cluster cluster = make_cluster(cfg);
    MatchingResult r = maximal_matching(p4, cfg, cluster);
    CHECK(r.matching.size() >= 1);
    CHECK(verify_matching(p4, r.matching).pass);
    CHECK(!r.iterations.empty());
  }
  SUBCASE("perfect matching input finishes in one iteration") {
    GenSpec spec;
    spec.kind = "disjoint_edges";
    spec.n = 12;
    Graph g = generate_graph(spec);
    AlgoConfig cfg = config(2);
    Cluster cluster = make_cluster(cfg);
    MatchingResult r = maximal_matching(g, cfg, cluster);
    CHECK(r.matching.size() == 6);
    CHECK(r.iterations.size() == 1);
  }
  SUBCASE("K4 yields a perfect matching of size 2") {
    Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    AlgoConfig cfg = config(2);
    Cluster cluster = make_cluster(cfg);
    MatchingResult r = maximal_matching(k4, cfg, cluster);
    CHECK(r.matching.size() == 2);
    CHECK(verify_matching(k4, r.matching).pass);
  }
  SUBCASE("certified progress per iteration") {
    GenSpec spec;
    spec.kind = "gnp";
    spec.n = 120;
    spec.prob_num = 1;
    spec.prob_den = 20;
    spec.seed = 21;
    Graph g = generate_graph(spec);
    AlgoConfig cfg = config(4);
    Cluster cluster = make_cluster(cfg);
    MatchingResult r = maximal_matching(g, cfg, cluster);
    CHECK(verify_matching(g, r.matching).pass);
    for (const IterationRow& row : r.iterations) {
      CHECK(row.achieved >= row.bound);
      CHECK(Rational(2 * row.edges_removed) >= row.achieved);
    }
  }
  SUBCASE("determinism") {
    GenSpec spec;
    spec.kind = "gnp";
    spec.n = 60;
    spec.prob_num = 1;
    spec.prob_den = 10;
    spec.seed = 77;
    Graph g = generate_graph(spec);
    AlgoConfig cfg = config(3);
    Cluster c1 = make_cluster(cfg);
    Cluster c2 = make_cluster(cfg);
    MatchingResult a = maximal_matching(g, cfg, c1);
    MatchingResult b = maximal_matching(g, cfg, c2);
    CHECK(a.matching == b.matching);
  }
}
