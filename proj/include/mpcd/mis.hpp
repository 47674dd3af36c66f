#pragma once

#include <vector>

#include "mpcd/config.hpp"
#include "mpcd/derand.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/matching.hpp"
#include "mpcd/mpc.hpp"

namespace mpcd {

struct SparsifyNodesResult {
  std::vector<NodeId> jprime;  // J', sorted
  int stages = 0;
  std::vector<ProgressCertificate> certificates;
  int64_t stage_invariant_misses = 0;
};

// Multi-stage derandomized node subsampling of J_0 = C^i (identity when
// i <= 4). Throws InvariantViolated when the final J' bounds fail.
SparsifyNodesResult sparsify_nodes(const Graph& g, const HeavySelection& sel,
                                   const AlgoConfig& cfg, Cluster& cluster);

struct BoundedNeighborhoods {
  std::vector<NodeId> jnodes;    // J', sorted; local index = position
  std::vector<int64_t> adj_off;  // J'-induced adjacency (local indices)
  std::vector<int32_t> adj;
  std::vector<int64_t> nv_off;   // per heavy node: N_v, ascending local ids
  std::vector<int32_t> nv;
  bool lemma_nv_mass_holds = false;   // N_v disjunction (deg-0 or 0.1 delta)
  bool lemma_full_mass_holds = false; // same over the full J'-neighborhood
};

// N_v = up to n^{4 delta} lowest-id J'-neighbors per heavy node, with the
// 2-hop data words charged against machine space.
BoundedNeighborhoods build_bounded_neighborhoods(const Graph& g,
                                                 const std::vector<NodeId>& jprime,
                                                 const HeavySelection& sel,
                                                 const AlgoConfig& cfg,
                                                 Cluster& cluster);

struct CandidateIS {
  std::vector<NodeId> is_nodes;       // IS_h, sorted
  std::vector<NodeId> covered_heavy;  // N_h = heavy nodes with N_v hit
  int64_t weight = 0;
  ProgressCertificate certificate;
  std::vector<Rational> per_heavy_bound;
  bool low_class_path = false;
};

CandidateIS find_round_is(const Graph& g, const BoundedNeighborhoods& neigh,
                          const HeavySelection& sel, const AlgoConfig& cfg,
                          Cluster& cluster);

struct MisResult {
  std::vector<NodeId> mis;
  std::vector<IterationRow> iterations;
  std::vector<ProgressCertificate> certificates;
};

// Outer loop: absorb isolated nodes, heavy class, node sparsification,
// bounded neighborhoods, candidate IS, remove IS and its neighborhood.
// Output verified independent and maximal.
MisResult maximal_independent_set(const Graph& g, const AlgoConfig& cfg,
                                  Cluster& cluster);

}  // namespace mpcd
