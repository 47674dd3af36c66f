#include "mpcd/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mpcd {

using Json = nlohmann::ordered_json;

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "p " << g.node_count() << " " << g.edge_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  NodeId n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;
    if (first == "p") {
      int64_t nn = 0, mm = 0;
      require(static_cast<bool>(row >> nn >> mm), ErrorCode::InvalidParams,
              "malformed header line");
      n = static_cast<NodeId>(nn);
      continue;
    }
    NodeId u = static_cast<NodeId>(std::stoll(first));
    NodeId v;
    require(static_cast<bool>(row >> v), ErrorCode::InvalidParams,
            "edge line missing endpoint");
    edges.push_back({u, v});
  }
  require(n >= 0, ErrorCode::InvalidParams, "edge list lacks a 'p n m' header");
  return Graph::from_edges(n, std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidParams, "cannot open " + path);
  return read_edge_list(in);
}

std::string write_palettes(const PaletteMap& palettes) {
  std::ostringstream out;
  for (size_t v = 0; v < palettes.size(); ++v) {
    out << v << ":";
    for (size_t i = 0; i < palettes[v].size(); ++i) {
      out << (i ? "," : " ") << palettes[v][i];
    }
    out << "\n";
  }
  return out.str();
}

PaletteMap read_palettes(std::istream& in, NodeId node_count) {
  PaletteMap palettes(static_cast<size_t>(node_count));
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t colon = line.find(':');
    if (colon == std::string::npos) continue;
    NodeId v = static_cast<NodeId>(std::stoll(line.substr(0, colon)));
    require(v >= 0 && v < node_count, ErrorCode::NodeIdOutOfRange,
            "palette line for unknown node");
    std::string rest = line.substr(colon + 1);
    for (char& c : rest) {
      if (c == ',') c = ' ';
    }
    std::istringstream row(rest);
    Color c;
    while (row >> c) palettes[static_cast<size_t>(v)].push_back(c);
  }
  return palettes;
}

PaletteMap read_palettes_file(const std::string& path, NodeId node_count) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidParams, "cannot open " + path);
  return read_palettes(in, node_count);
}

namespace {

Json certificate_json(const ProgressCertificate& cert) {
  Json chunks = Json::array();
  for (const ChunkChoice& c : cert.chunks) {
    chunks.push_back({{"chunk", c.chunk},
                      {"candidate", c.candidate},
                      {"score", c.score.str()},
                      {"method", c.method}});
  }
  Json coef = Json::array();
  for (int64_t c : cert.seed.coef) coef.push_back(c);
  return Json{{"seed", coef},
              {"achieved", cert.achieved.str()},
              {"bound", cert.bound.str()},
              {"strategy", cert.strategy},
              {"chunks", chunks}};
}

std::string iteration_csv(const std::vector<IterationRow>& rows, bool mis) {
  std::ostringstream out;
  out << "iter,edges,class_i,heavy_degree_sum,stages,bound,achieved,"
         "edges_removed,rounds,low_class";
  if (mis) out << ",is_size,is_closed_neighborhood";
  out << "\n";
  for (const IterationRow& r : rows) {
    out << r.iter << "," << r.edges_before << "," << r.cls << ","
        << r.heavy_degree_sum << "," << r.stages << "," << r.bound.str()
        << "," << r.achieved.str() << "," << r.edges_removed << ","
        << r.rounds_after << "," << (r.low_class_path ? 1 : 0);
    if (mis) out << "," << r.is_size << "," << r.is_neighborhood;
    out << "\n";
  }
  return out.str();
}

std::string stage_csv(const std::vector<StageRow>& rows) {
  std::ostringstream out;
  out << "stage,ell,edges_before,edges_after,sequence_index,"
         "sequences_evaluated,sequence_seeds\n";
  for (const StageRow& r : rows) {
    out << r.stage << "," << r.ell << "," << r.edges_before << ","
        << r.edges_after << "," << r.sequence_index << ","
        << r.sequences_evaluated << "," << r.sequence_seeds << "\n";
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::InvalidParams, "cannot write " + path);
  out << content;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  Graph g = config.input_path.empty()
                ? generate_graph(config.gen)
                : read_edge_list_file(config.input_path);
  ExperimentOutcome outcome;
  Cluster cluster(config.algo.spec, config.algo.charges);

  std::vector<ProgressCertificate> certificates;
  std::vector<IterationRow> iterations;
  std::vector<StageRow> stages;
  std::string algorithm = config.algorithm;

  if (algorithm == "matching") {
    std::vector<Edge> matching;
    if (config.engine == "plain") {
      MatchingResult r = maximal_matching(g, config.algo, cluster);
      matching = std::move(r.matching);
      iterations = std::move(r.iterations);
      certificates = std::move(r.certificates);
    } else if (config.engine == "lowdeg") {
      Graph line = line_graph_view(g, config.algo.line_graph_cap);
      SpaceModel space{&g};
      LowdegMisResult r = mis_lowdeg(line, config.algo, cluster, &space);
      for (NodeId e : r.mis) matching.push_back(g.edge(static_cast<EdgeId>(e)));
      stages = std::move(r.stages);
      outcome.used_lowdeg = true;
    } else {
      DispatchMatchingResult r = dispatch_matching(g, config.algo, cluster);
      matching = std::move(r.matching);
      iterations = std::move(r.iterations);
      certificates = std::move(r.certificates);
      stages = std::move(r.stages);
      outcome.used_lowdeg = r.used_lowdeg;
    }
    VerificationReport report = verify_matching(g, matching);
    outcome.verified = report.pass;
    outcome.solution_size = static_cast<int64_t>(matching.size());
    std::ostringstream sol;
    for (const Edge& e : matching) sol << e.u << " " << e.v << "\n";
    outcome.solution_text = sol.str();
  } else if (algorithm == "mis") {
    std::vector<NodeId> mis;
    if (config.engine == "plain") {
      MisResult r = maximal_independent_set(g, config.algo, cluster);
      mis = std::move(r.mis);
      iterations = std::move(r.iterations);
      certificates = std::move(r.certificates);
    } else if (config.engine == "lowdeg") {
      LowdegMisResult r = mis_lowdeg(g, config.algo, cluster);
      mis = std::move(r.mis);
      stages = std::move(r.stages);
      outcome.used_lowdeg = true;
    } else {
      DispatchMisResult r = dispatch_mis(g, config.algo, cluster);
      mis = std::move(r.mis);
      iterations = std::move(r.iterations);
      certificates = std::move(r.certificates);
      stages = std::move(r.stages);
      outcome.used_lowdeg = r.used_lowdeg;
    }
    VerificationReport report = verify_mis(g, mis);
    outcome.verified = report.pass;
    outcome.solution_size = static_cast<int64_t>(mis.size());
    std::ostringstream sol;
    for (NodeId v : mis) sol << v << "\n";
    outcome.solution_text = sol.str();
  } else if (algorithm == "coloring") {
    PaletteMap palettes =
        config.palette_path.empty()
            ? generate_palettes(g, config.palette_kind,
                                config.palette_universe, config.palette_seed)
            : read_palettes_file(config.palette_path, g.node_count());
    ColoringResult r = color_reduce(g, palettes, config.algo, cluster);
    certificates = std::move(r.certificates);
    VerificationReport report = verify_coloring(g, palettes, r.colors);
    outcome.verified = report.pass;
    outcome.solution_size = g.node_count();
    std::ostringstream sol;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      sol << v << " " << r.colors[static_cast<size_t>(v)] << "\n";
    }
    outcome.solution_text = sol.str();
    Json trace = Json::array();
    for (const RecursionTraceRow& row : r.trace) {
      trace.push_back({{"depth", row.depth},
                       {"v0", row.v0},
                       {"v1", row.v1},
                       {"v2", row.v2},
                       {"deficits_repaired", row.deficits_repaired}});
    }
    outcome.trace_json =
        Json{{"max_depth", r.max_depth}, {"levels", trace}}.dump(2) + "\n";
  } else {
    fail(ErrorCode::InvalidParams, "unknown algorithm '" + algorithm + "'");
  }

  outcome.iterations = outcome.used_lowdeg
                           ? static_cast<int64_t>(stages.size())
                           : static_cast<int64_t>(iterations.size());
  outcome.rounds = cluster.rounds();
  outcome.max_load = cluster.high_water();
  outcome.metrics_csv = outcome.used_lowdeg || !stages.empty()
                            ? stage_csv(stages)
                            : iteration_csv(iterations, algorithm == "mis");
  Json certs = Json::array();
  for (const ProgressCertificate& cert : certificates) {
    certs.push_back(certificate_json(cert));
  }
  outcome.certificates_json = certs.dump(2) + "\n";
  outcome.rounds_csv = cluster.round_log_csv();

  Json summary{{"algorithm", algorithm},
               {"engine", config.engine},
               {"n", g.node_count()},
               {"m", g.edge_count()},
               {"delta", "1/" + std::to_string(config.algo.delta.inv)},
               {"space_words", config.algo.spec.space_words},
               {"machine_count", config.algo.spec.machine_count},
               {"used_lowdeg", outcome.used_lowdeg},
               {"iterations", outcome.iterations},
               {"rounds", outcome.rounds},
               {"max_machine_load", outcome.max_load},
               {"solution_size", outcome.solution_size},
               {"verifier", outcome.verified ? "pass" : "fail"}};
  outcome.summary_json = summary.dump(2) + "\n";

  require(outcome.verified, ErrorCode::InvariantViolated,
          "experiment output failed verification");

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    std::string prefix = config.out_dir + "/" + config.tag;
    write_file(prefix + ".solution.txt", outcome.solution_text);
    write_file(prefix + ".metrics.csv", outcome.metrics_csv);
    write_file(prefix + ".certificates.json", outcome.certificates_json);
    write_file(prefix + ".rounds.csv", outcome.rounds_csv);
    write_file(prefix + ".summary.json", outcome.summary_json);
    if (!outcome.trace_json.empty()) {
      write_file(prefix + ".trace.json", outcome.trace_json);
    }
  }
  return outcome;
}

}  // namespace mpcd
