#pragma once

#include <vector>

#include "mpcd/config.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/lowdeg.hpp"
#include "mpcd/oracle.hpp"

namespace mpcd {

// Desk-scale ColorReduce parameters resolved from the config (overridable so
// the recursion is exercisable on moderate instances).
struct ColorReduceParams {
  int64_t low_threshold = 0;  // G0 cutoff on palette size / degree
  int64_t n_bins = 2;
  int64_t reserve = 1;        // reserve bins feeding V2
  int64_t slice = 16;         // machine slice of palettes / adjacency
};

ColorReduceParams resolve_color_reduce_params(NodeId node_count,
                                              const AlgoConfig& cfg);

// Luby's clique reduction: one clique node per palette entry, cross edges
// between equal colors of adjacent nodes; an MIS of the reduction graph
// picks exactly one entry per node.
std::vector<Color> mis_reduction_color(const Graph& g,
                                       const PaletteMap& palettes,
                                       const AlgoConfig& cfg,
                                       Cluster& cluster);

// Drops colors used by colored neighbors from every uncolored node's
// palette; re-checks |Pal(v)| >= deg_uncolored(v) + 1.
// partial[v] = -1 marks uncolored nodes.
PaletteMap update_palettes(const PaletteMap& palettes,
                           const std::vector<Color>& partial, const Graph& g);

struct RecursionTraceRow {
  int depth;
  int64_t v0;
  int64_t v1;
  int64_t v2;
  int64_t deficits_repaired;
};

struct ColoringResult {
  std::vector<Color> colors;
  std::vector<RecursionTraceRow> trace;
  std::vector<ProgressCertificate> certificates;
  int max_depth = 0;
};

// Recursive derandomized ColorReduce; the result is verified proper and
// palette-respecting before returning.
ColoringResult color_reduce(const Graph& g, const PaletteMap& palettes,
                            const AlgoConfig& cfg, Cluster& cluster);

}  // namespace mpcd
