#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mpcd/experiment.hpp"
#include "mpcd/parallel.hpp"

using namespace mpcd;

TEST_CASE("generators") {
  SUBCASE("grid 3x3") {
    GenSpec spec;
    spec.kind = "grid";
    spec.n = 9;
    spec.param_a = 3;
    spec.param_b = 3;
    Graph g = generate_graph(spec);
    CHECK(g.node_count() == 9);
    CHECK(g.edge_count() == 12);
  }
  SUBCASE("disjoint edges") {
    GenSpec spec;
    spec.kind = "disjoint_edges";
    spec.n = 10;
    Graph g = generate_graph(spec);
    CHECK(g.node_count() == 10);
    CHECK(g.edge_count() == 5);
    CHECK(g.max_degree() == 1);
  }
  SUBCASE("gnp is deterministic under its seed") {
    GenSpec spec;
    spec.kind = "gnp";
    spec.n = 100;
    spec.prob_num = 1;
    spec.prob_den = 10;
    spec.seed = 42;
    Graph a = generate_graph(spec);
    Graph b = generate_graph(spec);
    CHECK(a.edges() == b.edges());
    spec.seed = 43;
    Graph c = generate_graph(spec);
    CHECK(a.edges() != c.edges());
  }
  SUBCASE("regular graphs are regular") {
    GenSpec spec;
    spec.kind = "random_regular";
    spec.n = 32;
    spec.param_a = 4;
    spec.seed = 7;
    Graph g = generate_graph(spec);
    for (NodeId v = 0; v < g.node_count(); ++v) CHECK(g.degree(v) == 4);
  }
  SUBCASE("palette kinds meet the deg+1 budget") {
    GenSpec spec;
    spec.kind = "gnp";
    spec.n = 30;
    spec.prob_num = 1;
    spec.prob_den = 5;
    spec.seed = 2;
    Graph g = generate_graph(spec);
    for (const char* kind : {"shared", "banded", "random"}) {
      PaletteMap pal = generate_palettes(g, kind, 100, 3);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        CHECK(static_cast<int64_t>(pal[v].size()) == g.degree(v) + 1);
      }
    }
  }
}

TEST_CASE("file formats round-trip") {
  GenSpec spec;
  spec.kind = "gnp";
  spec.n = 25;
  spec.prob_num = 1;
  spec.prob_den = 4;
  spec.seed = 9;
  Graph g = generate_graph(spec);
  std::string text = write_edge_list(g);
  std::istringstream in(text);
  Graph back = read_edge_list(in);
  CHECK(back.node_count() == g.node_count());
  CHECK(back.edges() == g.edges());

  PaletteMap pal = generate_palettes(g, "random", 60, 4);
  std::string ptext = write_palettes(pal);
  std::istringstream pin(ptext);
  PaletteMap pback = read_palettes(pin, g.node_count());
  CHECK(pback == pal);

  SUBCASE("comments and header are honored") {
    std::istringstream weird("# hello\np 3 1\n0 1 # trailing\n");
    Graph w = read_edge_list(weird);
    CHECK(w.node_count() == 3);
    CHECK(w.edge_count() == 1);
  }
}

TEST_CASE("experiment runner") {
  SUBCASE("matching on a path") {
    ExperimentConfig config;
    config.algorithm = "matching";
    config.engine = "plain";
    config.gen.kind = "grid";
    config.gen.n = 4;
    config.gen.param_a = 1;
    config.gen.param_b = 4;
    config.algo.delta = Delta{2};
    ExperimentOutcome out = run_experiment(config);
    CHECK(out.verified);
    CHECK(out.iterations >= 1);
    CHECK(out.summary_json.find("\"verifier\": \"pass\"") != std::string::npos);
  }
  SUBCASE("MIS on C5 finds two nodes") {
    ExperimentConfig config;
    config.algorithm = "mis";
    config.gen.kind = "blowup";
    config.gen.n = 5;
    config.gen.param_a = 5;
    config.gen.param_b = 1;
    config.algo.delta = Delta{2};
    ExperimentOutcome out = run_experiment(config);
    CHECK(out.verified);
    CHECK(out.solution_size == 2);
  }
  SUBCASE("coloring emits a recursion trace") {
    ExperimentConfig config;
    config.algorithm = "coloring";
    config.gen.kind = "gnp";
    config.gen.n = 30;
    config.gen.prob_num = 1;
    config.gen.prob_den = 6;
    config.gen.seed = 8;
    config.algo.delta = Delta{3};
    ExperimentOutcome out = run_experiment(config);
    CHECK(out.verified);
    CHECK(!out.trace_json.empty());
  }
  SUBCASE("byte-identical reruns across thread counts") {
    ExperimentConfig config;
    config.algorithm = "matching";
    config.gen.kind = "gnp";
    config.gen.n = 64;
    config.gen.prob_num = 1;
    config.gen.prob_den = 8;
    config.gen.seed = 5;
    config.algo.delta = Delta{2};
    set_thread_count(1);
    ExperimentOutcome a = run_experiment(config);
    ExperimentOutcome b = run_experiment(config);
    set_thread_count(6);
    ExperimentOutcome c = run_experiment(config);
    set_thread_count(1);
    CHECK(a.solution_text == b.solution_text);
    CHECK(a.certificates_json == b.certificates_json);
    CHECK(a.metrics_csv == b.metrics_csv);
    CHECK(a.summary_json == b.summary_json);
    CHECK(a.solution_text == c.solution_text);
    CHECK(a.certificates_json == c.certificates_json);
    CHECK(a.rounds_csv == c.rounds_csv);
  }
}
