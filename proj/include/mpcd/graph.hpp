#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpcd/errors.hpp"
#include "mpcd/intmath.hpp"

namespace mpcd {

using NodeId = int32_t;
using EdgeId = int64_t;

struct Edge {
  NodeId u;
  NodeId v;
  bool operator==(const Edge&) const = default;
};

// Immutable simple undirected graph over a fixed node universe [0, n).
// Edges are normalized (u < v) and stored in lexicographic order; an edge's
// id is its rank in that order, which is the identity used for hashing.
class Graph {
 public:
  Graph() = default;

  // Validates and builds. Throws SelfLoop / NodeIdOutOfRange / DuplicateEdge.
  static Graph from_edges(NodeId node_count, std::vector<Edge> edges);

  NodeId node_count() const { return n_; }
  int64_t edge_count() const { return static_cast<int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }

  int64_t degree(NodeId v) const { return adj_off_[v + 1] - adj_off_[v]; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + adj_off_[v], adj_.data() + adj_off_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {inc_.data() + adj_off_[v], inc_.data() + adj_off_[v + 1]};
  }

  int64_t max_degree() const;
  bool has_edge(NodeId u, NodeId v) const;
  // Rank of normalized (u, v) in the edge order, or -1.
  EdgeId edge_id(NodeId u, NodeId v) const;

 private:
  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int64_t> adj_off_;
  std::vector<NodeId> adj_;   // neighbor ids, sorted per node
  std::vector<EdgeId> inc_;   // incident edge ids, aligned with adj_
};

// Graph on the same node universe with all edges touching a removed node
// dropped. removed.size() == node_count.
Graph remove_nodes(const Graph& g, const std::vector<char>& removed);

// Induced subgraph on `nodes` with ids relabeled to [0, |nodes|);
// back_map[i] is the original id of new node i.
Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes,
                       std::vector<NodeId>* back_map);

// delta = 1/inv, a unit fraction so that 1/delta is integral.
struct Delta {
  int inv = 8;
};

// Degree classes C^i = { v : ceil(n^((i-1)d)) <= deg(v) < ceil(n^(id)) },
// 1-based i up to 1/delta. Isolated nodes belong to no class.
struct DegreeClassing {
  int inv_delta = 1;
  std::vector<int64_t> thresholds;  // thresholds[i] = ceil(n^(i*delta)), i=0..1/delta

  int class_of_degree(int64_t d) const;  // 0 when d == 0
};

DegreeClassing make_degree_classing(NodeId node_count, Delta delta);

// Luby candidate set X: nodes with at least deg(v)/3 neighbors of no larger
// degree. Checks sum_{v in X} deg(v) >= |E| before returning.
std::vector<NodeId> luby_candidate_set(const Graph& g);

enum class SelectionMode { Matching, Mis };

struct HeavySelection {
  SelectionMode mode;
  int cls = 0;                        // chosen class index i
  std::vector<NodeId> heavy_nodes;    // B, sorted
  int64_t heavy_degree_sum = 0;       // sum of deg(v) over B

  // Matching mode: X(v) edge ids per heavy node (aligned offsets), and their
  // union E_0 sorted ascending.
  std::vector<int64_t> x_off;
  std::vector<EdgeId> x_edges;
  std::vector<EdgeId> seed_edges;

  // MIS mode: J_0 = C^i, sorted.
  std::vector<NodeId> seed_nodes;

  std::span<const EdgeId> x_of(size_t heavy_index) const {
    return {x_edges.data() + x_off[heavy_index],
            x_edges.data() + x_off[heavy_index + 1]};
  }
};

// Picks the class maximizing sum_{v in B_i} deg(v) (ties toward smaller i)
// and materializes the selection. Throws EmptyGraph when |E| == 0.
HeavySelection select_heavy_class(const Graph& g, Delta delta,
                                  SelectionMode mode);

// Line graph: one node per edge of g, adjacency iff edges share an endpoint.
// Throws SizeCapExceeded when |E(g)| > node_cap.
Graph line_graph_view(const Graph& g, int64_t node_cap);

}  // namespace mpcd
