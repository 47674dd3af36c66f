#pragma once

#include <vector>

#include "mpcd/config.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/matching.hpp"
#include "mpcd/mis.hpp"
#include "mpcd/mpc.hpp"
#include "mpcd/oracle.hpp"

namespace mpcd {

struct Distance2Coloring {
  std::vector<Color> chi;    // color per node, in [0, color_count)
  int64_t color_count = 1;
  int reduction_rounds = 0;  // Linial-style iterations charged
};

// Iterated polynomial color reduction on G^2: valid distance-2 coloring
// with at most d2_color_cap * Delta^4 colors.
Distance2Coloring distance2_coloring(const Graph& g, const AlgoConfig& cfg,
                                     Cluster& cluster);

struct StagePlan {
  int ell = 1;       // phases compressed into one stage
  int radius = 2;    // 2 * ell
  HashFamily hstar;  // pairwise family over the color space
  int64_t family_size = 0;     // |H*| = p*^2
  int64_t sequence_count = 0;  // |H*|^ell
};

// Ball-space accounting override for the line-graph matching route: balls
// are collected per node of `graph` at radius (stage radius + 1).
struct SpaceModel {
  const Graph* graph = nullptr;
};

// Largest ell with |H*|^ell within the sequence budget and 2ell-balls of
// every participating node within machine space.
StagePlan make_stage_plan(const Graph& g_stage, const std::vector<char>& present,
                          int64_t color_count, const AlgoConfig& cfg,
                          Cluster& cluster, const SpaceModel* space);

// Luby phases under color priorities. active0 marks participating nodes;
// status semantics match simulate_color_phases in oracle.hpp.
std::vector<int> run_phases(const Graph& g, const std::vector<char>& active0,
                            const std::vector<Color>& chi,
                            const HashFamily& hstar,
                            const std::vector<Seed>& seeds);

// Ball-local evaluation: simulates the phases inside center's radius-2ell
// ball only and returns center's status. Equals the global simulation.
int ball_local_status(const Graph& g, const std::vector<char>& present,
                      const std::vector<Color>& chi, const HashFamily& hstar,
                      const std::vector<Seed>& seeds, NodeId center);

struct CompressedStageResult {
  std::vector<NodeId> is_union;
  std::vector<NodeId> removed;     // IS union and its neighborhood
  int64_t edges_before = 0;
  int64_t edges_after = 0;
  int64_t sequence_index = -1;     // chosen sequence (ties: smallest index)
  int64_t sequences_evaluated = 0;
  std::vector<Seed> chosen_seeds;
};

// Evaluates every sequence in (H*)^ell, applies the one minimizing the
// surviving edge count, and reports the accumulated independent set.
CompressedStageResult compressed_stage(const Graph& g_stage,
                                       const std::vector<char>& present,
                                       const std::vector<Color>& chi,
                                       const StagePlan& plan,
                                       const AlgoConfig& cfg, Cluster& cluster,
                                       bool first_stage,
                                       const SpaceModel* space);

struct StageRow {
  int stage = 0;
  int ell = 0;
  int64_t edges_before = 0;
  int64_t edges_after = 0;
  int64_t sequence_index = -1;
  int64_t sequences_evaluated = 0;
  std::string sequence_seeds;  // comma-separated seed coefficient lists
};

struct LowdegMisResult {
  std::vector<NodeId> mis;
  std::vector<StageRow> stages;
  Distance2Coloring coloring;
};

// O(log Delta + log log n)-style MIS: distance-2 coloring, r-hop balls,
// repeated compressed stages. Requires Delta <= n^delta.
LowdegMisResult mis_lowdeg(const Graph& g, const AlgoConfig& cfg,
                           Cluster& cluster, const SpaceModel* space = nullptr);

struct DispatchMisResult {
  std::vector<NodeId> mis;
  bool used_lowdeg = false;
  std::vector<IterationRow> iterations;          // plain path
  std::vector<ProgressCertificate> certificates; // plain path
  std::vector<StageRow> stages;                  // lowdeg path
};

struct DispatchMatchingResult {
  std::vector<Edge> matching;
  bool used_lowdeg = false;
  std::vector<IterationRow> iterations;
  std::vector<ProgressCertificate> certificates;
  std::vector<StageRow> stages;
};

// Delta > n^delta: the log-n modules; otherwise the compressed-stage path
// (for matching: MIS simulated on the line graph, balls collected per
// original node).
DispatchMisResult dispatch_mis(const Graph& g, const AlgoConfig& cfg,
                               Cluster& cluster);
DispatchMatchingResult dispatch_matching(const Graph& g, const AlgoConfig& cfg,
                                         Cluster& cluster);

}  // namespace mpcd
