#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mpcd/experiment.hpp"
#include "mpcd/parallel.hpp"

namespace {

mpcd::Delta parse_delta(const std::string& text) {
  size_t slash = text.find('/');
  mpcd::require(slash != std::string::npos && text.substr(0, slash) == "1",
                mpcd::ErrorCode::InvalidParams,
                "delta must be a unit fraction like 1/8");
  return mpcd::Delta{std::stoi(text.substr(slash + 1))};
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  mpcd::require(out.good(), mpcd::ErrorCode::InvalidParams,
                "cannot write " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic low-space MPC graph algorithms"};
  app.require_subcommand(1);

  // shared algorithm options
  std::string delta = "1/8";
  int64_t space = 1ll << 26;
  int64_t machines = 1ll << 20;
  std::string field_p = "auto";
  int k_selection = 2;
  int k_concentration = 4;
  int threads = 1;
  std::string engine = "auto";
  std::string input;
  std::string palettes_path;
  std::string metrics_path;
  std::string certificates_path;
  std::string out_dir;
  std::string tag = "run";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--delta", delta, "unit fraction, e.g. 1/8");
    cmd->add_option("--space", space, "machine space S in words");
    cmd->add_option("--machines", machines, "machine count M");
    cmd->add_option("--field-p", field_p, "field floor or 'auto'");
    cmd->add_option("--k", k_selection, "selection independence (pairwise)");
    cmd->add_option("--kc", k_concentration, "concentration independence");
    cmd->add_option("--threads", threads, "worker threads");
    cmd->add_option("--engine", engine, "auto | plain | lowdeg");
    cmd->add_option("--input", input, "edge-list file");
    cmd->add_option("--metrics", metrics_path, "metrics CSV output");
    cmd->add_option("--certificates", certificates_path,
                    "certificates JSON output");
    cmd->add_option("--out-dir", out_dir, "directory for the full output set");
    cmd->add_option("--tag", tag, "output file prefix");
  };

  CLI::App* matching = app.add_subcommand("matching", "maximal matching");
  CLI::App* mis = app.add_subcommand("mis", "maximal independent set");
  CLI::App* coloring = app.add_subcommand("coloring", "(deg+1)-list coloring");
  add_common(matching);
  add_common(mis);
  add_common(coloring);
  std::string palette_kind = "shared";
  int64_t palette_universe = 0;
  uint64_t palette_seed = 1;
  coloring->add_option("--palettes", palettes_path, "palette file");
  coloring->add_option("--palette-kind", palette_kind,
                       "shared | random | banded");
  coloring->add_option("--palette-universe", palette_universe,
                       "random palette universe size");
  coloring->add_option("--palette-seed", palette_seed, "palette PRNG seed");

  // generation options (also usable by the algorithm subcommands)
  mpcd::GenSpec gen;
  gen.kind = "gnp";
  gen.n = 64;
  gen.prob_num = 1;
  gen.prob_den = 8;
  std::string prob = "";
  for (CLI::App* cmd : {matching, mis, coloring}) {
    cmd->add_option("--kind", gen.kind, "generator kind");
    cmd->add_option("--n", gen.n, "node count");
    cmd->add_option("--pa", gen.param_a, "generator parameter a");
    cmd->add_option("--pb", gen.param_b, "generator parameter b");
    cmd->add_option("--prob", prob, "gnp probability as num/den");
    cmd->add_option("--gen-seed", gen.seed, "generator seed");
  }

  CLI::App* gen_cmd = app.add_subcommand("gen", "write a generated graph");
  std::string gen_out = "graph.el";
  std::string gen_palettes_out;
  gen_cmd->add_option("--kind", gen.kind, "generator kind");
  gen_cmd->add_option("--n", gen.n, "node count");
  gen_cmd->add_option("--pa", gen.param_a, "generator parameter a");
  gen_cmd->add_option("--pb", gen.param_b, "generator parameter b");
  gen_cmd->add_option("--prob", prob, "gnp probability as num/den");
  gen_cmd->add_option("--gen-seed", gen.seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "edge-list output path");
  gen_cmd->add_option("--palettes-out", gen_palettes_out,
                      "also write deg+1 palettes");
  gen_cmd->add_option("--palette-kind", palette_kind,
                      "shared | random | banded");
  gen_cmd->add_option("--palette-universe", palette_universe,
                      "random palette universe size");
  gen_cmd->add_option("--palette-seed", palette_seed, "palette PRNG seed");

  CLI::App* verify = app.add_subcommand("verify", "check a solution file");
  std::string verify_algorithm = "matching";
  std::string solution_path;
  verify->add_option("--algorithm", verify_algorithm,
                     "matching | mis | coloring");
  verify->add_option("--input", input, "edge-list file")->required();
  verify->add_option("--solution", solution_path, "solution file")->required();
  verify->add_option("--palettes", palettes_path, "palette file (coloring)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!prob.empty()) {
      size_t slash = prob.find('/');
      mpcd::require(slash != std::string::npos, mpcd::ErrorCode::InvalidParams,
                    "probability must be num/den");
      gen.prob_num = std::stoll(prob.substr(0, slash));
      gen.prob_den = std::stoll(prob.substr(slash + 1));
    }
    mpcd::set_thread_count(threads);

    if (gen_cmd->parsed()) {
      mpcd::Graph g = mpcd::generate_graph(gen);
      write_text(gen_out, mpcd::write_edge_list(g));
      if (!gen_palettes_out.empty()) {
        write_text(gen_palettes_out,
                   mpcd::write_palettes(mpcd::generate_palettes(
                       g, palette_kind, palette_universe, palette_seed)));
      }
      std::cout << "wrote " << gen_out << " (n=" << g.node_count()
                << ", m=" << g.edge_count() << ")\n";
      return 0;
    }

    if (verify->parsed()) {
      mpcd::Graph g = mpcd::read_edge_list_file(input);
      std::ifstream sol(solution_path);
      mpcd::require(sol.good(), mpcd::ErrorCode::InvalidParams,
                    "cannot open " + solution_path);
      mpcd::VerificationReport report{"", false, "unknown algorithm"};
      if (verify_algorithm == "matching") {
        std::vector<mpcd::Edge> matching;
        mpcd::NodeId u, v;
        while (sol >> u >> v) matching.push_back({u, v});
        report = mpcd::verify_matching(g, matching);
      } else if (verify_algorithm == "mis") {
        std::vector<mpcd::NodeId> set;
        mpcd::NodeId v;
        while (sol >> v) set.push_back(v);
        report = mpcd::verify_mis(g, set);
      } else if (verify_algorithm == "coloring") {
        mpcd::PaletteMap palettes =
            mpcd::read_palettes_file(palettes_path, g.node_count());
        std::vector<mpcd::Color> colors(
            static_cast<size_t>(g.node_count()), -1);
        mpcd::NodeId v;
        mpcd::Color c;
        while (sol >> v >> c) colors[static_cast<size_t>(v)] = c;
        report = mpcd::verify_coloring(g, palettes, colors);
      }
      std::cout << report.property << ": "
                << (report.pass ? "pass" : "FAIL " + report.witness) << "\n";
      return report.pass ? 0 : 1;
    }

    mpcd::ExperimentConfig config;
    config.algorithm = matching->parsed()  ? "matching"
                       : mis->parsed()     ? "mis"
                                           : "coloring";
    config.engine = engine;
    config.gen = gen;
    config.input_path = input;
    config.palette_path = palettes_path;
    config.palette_kind = palette_kind;
    config.palette_universe = palette_universe;
    config.palette_seed = palette_seed;
    config.out_dir = out_dir;
    config.tag = tag;
    config.algo.delta = parse_delta(delta);
    config.algo.spec.space_words = space;
    config.algo.spec.machine_count = machines;
    config.algo.k_selection = k_selection;
    config.algo.k_concentration = k_concentration;
    if (field_p != "auto") config.algo.field_floor = std::stoll(field_p);

    mpcd::ExperimentOutcome outcome = mpcd::run_experiment(config);
    if (!metrics_path.empty()) write_text(metrics_path, outcome.metrics_csv);
    if (!certificates_path.empty()) {
      write_text(certificates_path, outcome.certificates_json);
    }
    std::cout << outcome.summary_json;
    return outcome.verified ? 0 : 1;
  } catch (const mpcd::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
