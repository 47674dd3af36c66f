#include "mpcd/graph.hpp"

#include <algorithm>
#include <string>

namespace mpcd {

Graph Graph::from_edges(NodeId node_count, std::vector<Edge> edges) {
  require(node_count >= 0, ErrorCode::InvalidParams, "negative node count");
  for (auto& e : edges) {
    require(e.u != e.v, ErrorCode::SelfLoop,
            "self loop at node " + std::to_string(e.u));
    require(e.u >= 0 && e.v >= 0 && e.u < node_count && e.v < node_count,
            ErrorCode::NodeIdOutOfRange,
            "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                ") outside [0," + std::to_string(node_count) + ")");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (size_t i = 1; i < edges.size(); ++i) {
    require(!(edges[i] == edges[i - 1]), ErrorCode::DuplicateEdge,
            "edge (" + std::to_string(edges[i].u) + "," +
                std::to_string(edges[i].v) + ") repeated");
  }

  Graph g;
  g.n_ = node_count;
  g.edges_ = std::move(edges);
  g.adj_off_.assign(static_cast<size_t>(node_count) + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.adj_off_[e.u + 1];
    ++g.adj_off_[e.v + 1];
  }
  for (NodeId v = 0; v < node_count; ++v) g.adj_off_[v + 1] += g.adj_off_[v];
  g.adj_.resize(g.edges_.size() * 2);
  g.inc_.resize(g.edges_.size() * 2);
  std::vector<int64_t> cursor(g.adj_off_.begin(), g.adj_off_.end() - 1);
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges_[static_cast<size_t>(id)];
    g.adj_[cursor[e.u]] = e.v;
    g.inc_[cursor[e.u]++] = id;
    g.adj_[cursor[e.v]] = e.u;
    g.inc_[cursor[e.v]++] = id;
  }
  // Edges are sorted, so each adjacency list comes out sorted except that a
  // node's lower-id neighbors are appended in edge order too; both endpoints
  // see neighbors in increasing id order already. Keep an explicit sort of
  // (neighbor, edge) pairs for the nodes where insertion order differs.
  for (NodeId v = 0; v < node_count; ++v) {
    auto b = g.adj_off_[v];
    auto e = g.adj_off_[v + 1];
    bool sorted = true;
    for (int64_t i = b + 1; i < e; ++i) {
      if (g.adj_[i - 1] > g.adj_[i]) {
        sorted = false;
        break;
      }
    }
    if (sorted) continue;
    std::vector<std::pair<NodeId, EdgeId>> tmp;
    tmp.reserve(static_cast<size_t>(e - b));
    for (int64_t i = b; i < e; ++i) tmp.emplace_back(g.adj_[i], g.inc_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (int64_t i = b; i < e; ++i) {
      g.adj_[i] = tmp[static_cast<size_t>(i - b)].first;
      g.inc_[i] = tmp[static_cast<size_t>(i - b)].second;
    }
  }
  return g;
}

int64_t Graph::max_degree() const {
  int64_t d = 0;
  for (NodeId v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

EdgeId Graph::edge_id(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  Edge probe{u, v};
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), probe, [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
      });
  if (it == edges_.end() || !(*it == probe)) return -1;
  return static_cast<EdgeId>(it - edges_.begin());
}

Graph remove_nodes(const Graph& g, const std::vector<char>& removed) {
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    if (!removed[e.u] && !removed[e.v]) kept.push_back(e);
  }
  return Graph::from_edges(g.node_count(), std::move(kept));
}

Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes,
                       std::vector<NodeId>* back_map) {
  std::vector<NodeId> fwd(static_cast<size_t>(g.node_count()), -1);
  for (size_t i = 0; i < nodes.size(); ++i) fwd[nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> sub;
  for (const Edge& e : g.edges()) {
    if (fwd[e.u] >= 0 && fwd[e.v] >= 0) sub.push_back({fwd[e.u], fwd[e.v]});
  }
  if (back_map) *back_map = nodes;
  return Graph::from_edges(static_cast<NodeId>(nodes.size()), std::move(sub));
}

int DegreeClassing::class_of_degree(int64_t d) const {
  if (d <= 0) return 0;
  for (int i = 1; i <= inv_delta; ++i) {
    if (d >= thresholds[i - 1] && d < thresholds[i]) return i;
  }
  // degree can equal n-1 < n^1; the last class catches everything remaining
  return inv_delta;
}

DegreeClassing make_degree_classing(NodeId node_count, Delta delta) {
  require(delta.inv >= 1, ErrorCode::InvalidParams, "1/delta must be >= 1");
  DegreeClassing dc;
  dc.inv_delta = delta.inv;
  dc.thresholds.resize(static_cast<size_t>(delta.inv) + 1);
  int64_t n = std::max<int64_t>(2, node_count);
  for (int i = 0; i <= delta.inv; ++i) {
    dc.thresholds[static_cast<size_t>(i)] =
        pow_ceil(n, static_cast<unsigned>(i), static_cast<unsigned>(delta.inv));
  }
  dc.thresholds[0] = 1;
  return dc;
}

std::vector<NodeId> luby_candidate_set(const Graph& g) {
  std::vector<NodeId> x;
  int64_t degree_mass = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    int64_t dv = g.degree(v);
    int64_t low = 0;
    for (NodeId u : g.neighbors(v)) {
      if (g.degree(u) <= dv) ++low;
    }
    if (3 * low >= dv) {
      x.push_back(v);
      degree_mass += dv;
    }
  }
  require(degree_mass >= g.edge_count(), ErrorCode::InvariantViolated,
          "Luby candidate mass below edge count");
  return x;
}

HeavySelection select_heavy_class(const Graph& g, Delta delta,
                                  SelectionMode mode) {
  require(g.edge_count() >= 1, ErrorCode::EmptyGraph,
          "heavy-class selection needs at least one edge");
  const int k = delta.inv;
  DegreeClassing dc = make_degree_classing(g.node_count(), delta);

  std::vector<int> node_class(static_cast<size_t>(g.node_count()), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    node_class[v] = dc.class_of_degree(g.degree(v));
  }

  std::vector<std::vector<NodeId>> members(static_cast<size_t>(k) + 1);
  std::vector<int64_t> mass(static_cast<size_t>(k) + 1, 0);

  if (mode == SelectionMode::Matching) {
    std::vector<char> in_x(static_cast<size_t>(g.node_count()), 0);
    for (NodeId v : luby_candidate_set(g)) in_x[v] = 1;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      int c = node_class[v];
      if (c == 0 || !in_x[v]) continue;
      members[c].push_back(v);
      mass[c] += g.degree(v);
    }
  } else {
    // B_i membership: sum over class-i neighbors of 1/deg >= delta/3,
    // decided with a shared lcm denominator so the comparison is exact.
    int64_t max_deg = g.max_degree();
    Bigint shared = lcm_upto(max_deg);
    std::vector<Bigint> unit(static_cast<size_t>(max_deg) + 1);
    for (int64_t d = 1; d <= max_deg; ++d) unit[static_cast<size_t>(d)] = shared / d;

    std::vector<Bigint> acc(static_cast<size_t>(k) + 1);
    std::vector<int> touched;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      touched.clear();
      for (NodeId u : g.neighbors(v)) {
        int c = node_class[u];
        if (acc[c].is_zero()) touched.push_back(c);
        acc[c] += unit[static_cast<size_t>(g.degree(u))];
      }
      for (int c : touched) {
        if (c != 0 && 3 * k * acc[c] >= shared) {
          members[c].push_back(v);
          mass[c] += g.degree(v);
        }
        acc[c] = 0;
      }
    }
  }

  int best = 1;
  for (int i = 2; i <= k; ++i) {
    if (mass[i] > mass[best]) best = i;
  }
  require(static_cast<Bigint>(mass[best]) * k >= g.edge_count(),
          ErrorCode::InvariantViolated,
          "heavy class mass below delta * |E|");

  HeavySelection sel;
  sel.mode = mode;
  sel.cls = best;
  sel.heavy_nodes = std::move(members[best]);
  sel.heavy_degree_sum = mass[best];

  if (mode == SelectionMode::Matching) {
    sel.x_off.assign(1, 0);
    for (NodeId v : sel.heavy_nodes) {
      int64_t dv = g.degree(v);
      auto nb = g.neighbors(v);
      auto inc = g.incident_edges(v);
      for (size_t idx = 0; idx < nb.size(); ++idx) {
        if (g.degree(nb[idx]) <= dv) sel.x_edges.push_back(inc[idx]);
      }
      sel.x_off.push_back(static_cast<int64_t>(sel.x_edges.size()));
    }
    sel.seed_edges = sel.x_edges;
    std::sort(sel.seed_edges.begin(), sel.seed_edges.end());
    sel.seed_edges.erase(
        std::unique(sel.seed_edges.begin(), sel.seed_edges.end()),
        sel.seed_edges.end());
  } else {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (node_class[v] == best) sel.seed_nodes.push_back(v);
    }
  }
  return sel;
}

Graph line_graph_view(const Graph& g, int64_t node_cap) {
  require(g.edge_count() <= node_cap, ErrorCode::SizeCapExceeded,
          "line graph would have " + std::to_string(g.edge_count()) +
              " nodes, cap " + std::to_string(node_cap));
  std::vector<Edge> line_edges;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto inc = g.incident_edges(v);
    for (size_t i = 0; i < inc.size(); ++i) {
      for (size_t j = i + 1; j < inc.size(); ++j) {
        EdgeId a = inc[i];
        EdgeId b = inc[j];
        line_edges.push_back({static_cast<NodeId>(std::min(a, b)),
                              static_cast<NodeId>(std::max(a, b))});
      }
    }
  }
  return Graph::from_edges(static_cast<NodeId>(g.edge_count()),
                           std::move(line_edges));
}

}  // namespace mpcd
