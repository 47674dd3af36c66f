#pragma once

#include <iosfwd>
#include <string>

#include "mpcd/coloring.hpp"
#include "mpcd/config.hpp"
#include "mpcd/generators.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/lowdeg.hpp"

namespace mpcd {

// Edge-list text format: '#' comments, a header "p <n> <m>", then one
// "u v" pair per line (0-based ids).
std::string write_edge_list(const Graph& g);
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

// Palette format: one "v: c1,c2,..." line per node.
std::string write_palettes(const PaletteMap& palettes);
PaletteMap read_palettes(std::istream& in, NodeId node_count);
PaletteMap read_palettes_file(const std::string& path, NodeId node_count);

struct ExperimentConfig {
  std::string algorithm;         // matching | mis | coloring
  std::string engine = "auto";   // auto | plain | lowdeg
  GenSpec gen;                   // used when input_path empty
  std::string input_path;
  std::string palette_path;      // coloring only; generated when empty
  std::string palette_kind = "shared";
  int64_t palette_universe = 0;
  uint64_t palette_seed = 1;
  AlgoConfig algo;
  std::string out_dir;  // when set, files <tag>.solution.txt etc. are written
  std::string tag = "run";
};

struct ExperimentOutcome {
  bool verified = false;
  int64_t solution_size = 0;
  int64_t iterations = 0;  // plain-path iterations or lowdeg stages
  int64_t rounds = 0;
  int64_t max_load = 0;
  bool used_lowdeg = false;
  std::string solution_text;
  std::string metrics_csv;
  std::string certificates_json;
  std::string rounds_csv;
  std::string summary_json;
  std::string trace_json;  // coloring recursion trace
};

// Runs the configured pipeline, verifies the solution, and (when out_dir is
// set) writes solution/metrics/certificates/rounds/summary files. Outputs
// are byte-deterministic for a fixed config.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace mpcd
