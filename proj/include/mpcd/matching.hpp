#pragma once

#include <vector>

#include "mpcd/config.hpp"
#include "mpcd/derand.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/mpc.hpp"

namespace mpcd {

struct SparsifyEdgesResult {
  std::vector<EdgeId> estar;  // E*, sorted ids into the round graph
  int stages = 0;
  std::vector<ProgressCertificate> certificates;
  int64_t stage_invariant_misses = 0;  // zeta-relaxed per-stage check misses
};

// Multi-stage derandomized edge subsampling (identity when the chosen class
// has i <= 4). Throws InvariantViolated when the final E* bounds fail.
SparsifyEdgesResult sparsify_edges(const Graph& g, const HeavySelection& sel,
                                   const AlgoConfig& cfg, Cluster& cluster);

struct CandidateMatching {
  std::vector<EdgeId> edges;          // E_h
  std::vector<NodeId> matched_heavy;  // N_h = heavy nodes with E_h-degree 1
  int64_t weight = 0;                 // sum of deg(v) over N_h
  ProgressCertificate certificate;
  std::vector<Rational> per_heavy_bound;
  bool low_class_path = false;        // i <= 4, so the 1/6 mass bound applies
  bool mass_hypothesis_held = false;  // 1/27 (or 1/6) edge-mass check held
};

CandidateMatching find_round_matching(const Graph& g,
                                      const std::vector<EdgeId>& estar,
                                      const HeavySelection& sel,
                                      const AlgoConfig& cfg, Cluster& cluster);

struct IterationRow {
  int iter = 0;
  int64_t edges_before = 0;
  int cls = 0;
  int64_t heavy_degree_sum = 0;
  int stages = 0;
  Rational bound;
  Rational achieved;
  int64_t edges_removed = 0;
  int64_t rounds_after = 0;
  bool low_class_path = false;
  int64_t is_size = 0;            // MIS runs only
  int64_t is_neighborhood = 0;    // MIS runs only
};

struct MatchingResult {
  std::vector<Edge> matching;
  std::vector<IterationRow> iterations;
  std::vector<ProgressCertificate> certificates;
};

// Outer loop: heavy class -> sparsify -> candidate matching -> remove
// matched nodes, until the graph is edgeless. The output is verified
// maximal before returning.
MatchingResult maximal_matching(const Graph& g, const AlgoConfig& cfg,
                                Cluster& cluster);

}  // namespace mpcd
