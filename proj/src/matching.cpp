#include "mpcd/matching.hpp"

#include <algorithm>
#include <map>

#include "mpcd/objectives.hpp"
#include "mpcd/oracle.hpp"

namespace mpcd {

namespace {

HashFamily family_for(const AlgoConfig& cfg, int k, int64_t domain,
                      int64_t slack_scale) {
  HashFamily f;
  f.k = k;
  f.p = cfg.field_prime(std::max<int64_t>(domain, 1), slack_scale);
  f.domain_size = std::max<int64_t>(domain, 1);
  f.range_size = f.p;
  return f;
}

struct GroupedItems {
  std::vector<int64_t> points;       // backing array, grouped
  std::vector<int64_t> group_sizes;  // nonempty groups in id order
};

}  // namespace

SparsifyEdgesResult sparsify_edges(const Graph& g, const HeavySelection& sel,
                                   const AlgoConfig& cfg, Cluster& cluster) {
  require(sel.mode == SelectionMode::Matching, ErrorCode::InvalidParams,
          "matching-mode selection required");
  SparsifyEdgesResult out;
  out.estar = sel.seed_edges;
  const int k = cfg.delta.inv;
  const int i = sel.cls;
  if (i <= 4) return out;

  const int64_t n = std::max<NodeId>(2, g.node_count());
  const int64_t t3 = pow_ceil(n, 3, static_cast<unsigned>(k));
  const int64_t t4 = pow_ceil(n, 4, static_cast<unsigned>(k));


  // Degrees within E_0 and |X(v)|, frozen for the invariant checks.
  std::vector<int64_t> d_e0(static_cast<size_t>(g.node_count()), 0);
  for (EdgeId e : out.estar) {
    ++d_e0[g.edge(e).u];
    ++d_e0[g.edge(e).v];
  }
  std::vector<int64_t> x0(sel.heavy_nodes.size());
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    x0[h] = static_cast<int64_t>(sel.x_of(h).size());
  }

  std::vector<char> alive(static_cast<size_t>(g.edge_count()), 0);
  for (EdgeId e : out.estar) alive[static_cast<size_t>(e)] = 1;
  std::vector<EdgeId> cur = out.estar;

  HashFamily fam = family_for(cfg, cfg.k_concentration, g.edge_count(), 1);
  const int64_t threshold =
      sampling_threshold(fam.p, n, cfg.delta.inv);

  for (int j = 1; j <= i - 4; ++j) {
    // Type A: every endpoint's surviving incident edges. Type B: each heavy
    // node's surviving X(v). Both are chunked into machines of t4 items.
    std::vector<int64_t> deg(static_cast<size_t>(g.node_count()), 0);
    for (EdgeId e : cur) {
      ++deg[g.edge(e).u];
      ++deg[g.edge(e).v];
    }
    GroupedItems type_a;
    {
      std::vector<int64_t> offset(static_cast<size_t>(g.node_count()) + 1, 0);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        offset[v + 1] = offset[v] + deg[v];
      }
      type_a.points.resize(static_cast<size_t>(offset.back()));
      std::vector<int64_t> cursor(offset.begin(), offset.end() - 1);
      for (EdgeId e : cur) {
        type_a.points[static_cast<size_t>(cursor[g.edge(e).u]++)] = e;
        type_a.points[static_cast<size_t>(cursor[g.edge(e).v]++)] = e;
      }
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (deg[v] > 0) type_a.group_sizes.push_back(deg[v]);
      }
    }
    GroupedItems type_b;
    for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
      int64_t count = 0;
      for (EdgeId e : sel.x_of(h)) {
        if (alive[static_cast<size_t>(e)]) {
          type_b.points.push_back(e);
          ++count;
        }
      }
      if (count > 0) type_b.group_sizes.push_back(count);
    }

    Placement place_a = cluster.distribute_grouped(type_a.group_sizes, t4);
    Placement place_b = cluster.distribute_grouped(type_b.group_sizes, t4);

    std::vector<int64_t> points = type_a.points;
    points.insert(points.end(), type_b.points.begin(), type_b.points.end());
    std::vector<SubsampleGoodness::Machine> machines;
    auto add_machines = [&](const Placement& place, int64_t base) {
      for (const MachineRange& r : place.machines) {
        int64_t t = r.load();
        int64_t lambda = concentration_deviation(n, k, t);
        int64_t center = t * threshold;
        machines.push_back({base + r.begin, base + r.end,
                            center - lambda * fam.p,
                            center + lambda * fam.p});
      }
    };
    add_machines(place_a, 0);
    add_machines(place_b, static_cast<int64_t>(type_a.points.size()));

    SubsampleGoodness objective(fam, threshold, std::move(points), {},
                                std::move(machines));
    Rational bound = objective.expectation_lower_bound();
    ProgressCertificate cert =
        find_seed(fam, objective, cfg.derand, &cluster, bound);

    std::vector<EdgeId> next;
    next.reserve(cur.size());
    for (EdgeId e : cur) {
      if (eval_field(fam, cert.seed, e) < threshold) {
        next.push_back(e);
      } else {
        alive[static_cast<size_t>(e)] = 0;
      }
    }
    cur = std::move(next);
    cluster.charge("apply_subsample", cluster.charges().broadcast_rounds, 1,
                   static_cast<int64_t>(cur.size()));
    out.certificates.push_back(std::move(cert));
    ++out.stages;

    // zeta-relaxed stage invariants; misses are recorded, the final E*
    // bounds below decide whether the stage output is usable.
    std::vector<int64_t> dj(static_cast<size_t>(g.node_count()), 0);
    for (EdgeId e : cur) {
      ++dj[g.edge(e).u];
      ++dj[g.edge(e).v];
    }
    int64_t pfj = pow_floor(n, static_cast<unsigned>(j), static_cast<unsigned>(k));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      __int128 lhs = static_cast<__int128>(dj[v]) * cfg.zeta_den * pfj;
      __int128 rhs =
          static_cast<__int128>(cfg.zeta_den + cfg.zeta_num) * d_e0[v] +
          static_cast<__int128>(cfg.zeta_den) * t3 * pfj;
      if (lhs > rhs) ++out.stage_invariant_misses;
    }
    int64_t pcj = pow_ceil(n, static_cast<unsigned>(j), static_cast<unsigned>(k));
    for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
      int64_t xc = 0;
      for (EdgeId e : sel.x_of(h)) xc += alive[static_cast<size_t>(e)];
      __int128 lhs = static_cast<__int128>(xc) * cfg.zeta_den * pcj;
      __int128 rhs =
          static_cast<__int128>(cfg.zeta_den - cfg.zeta_num) * x0[h];
      if (lhs < rhs) ++out.stage_invariant_misses;
    }
  }

  // Final bounds that the selection round actually consumes.
  std::vector<int64_t> dstar(static_cast<size_t>(g.node_count()), 0);
  for (EdgeId e : cur) {
    ++dstar[g.edge(e).u];
    ++dstar[g.edge(e).v];
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    require(dstar[v] <= 2 * t4, ErrorCode::InvariantViolated,
            "node " + std::to_string(v) + " keeps E*-degree " +
                std::to_string(dstar[v]) + " > 2n^{4d} = " +
                std::to_string(2 * t4) + " after sparsification");
  }
  require(!cur.empty(), ErrorCode::InvariantViolated,
          "sparsification emptied E*");
  int64_t pcf =
      pow_ceil(n, static_cast<unsigned>(i - 4), static_cast<unsigned>(k));
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    int64_t xc = 0;
    for (EdgeId e : sel.x_of(h)) xc += alive[static_cast<size_t>(e)];
    __int128 lhs = static_cast<__int128>(xc) * cfg.zeta_den * pcf;
    __int128 rhs = static_cast<__int128>(cfg.zeta_den - cfg.zeta_num) * x0[h];
    require(lhs >= rhs, ErrorCode::InvariantViolated,
            "heavy node " + std::to_string(sel.heavy_nodes[h]) +
                " lost too much of X(v) during sparsification");
  }

  out.estar = std::move(cur);
  return out;
}

CandidateMatching find_round_matching(const Graph& g,
                                      const std::vector<EdgeId>& estar,
                                      const HeavySelection& sel,
                                      const AlgoConfig& cfg,
                                      Cluster& cluster) {
  require(sel.mode == SelectionMode::Matching, ErrorCode::InvalidParams,
          "matching-mode selection required");
  const int64_t n = std::max<NodeId>(2, g.node_count());
  const int64_t t4 = pow_ceil(n, 4, static_cast<unsigned>(cfg.delta.inv));

  // Local index per E*-edge and per-node incident lists.
  std::vector<int64_t> dstar(static_cast<size_t>(g.node_count()), 0);
  for (EdgeId e : estar) {
    ++dstar[g.edge(e).u];
    ++dstar[g.edge(e).v];
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    require(dstar[v] <= 2 * t4, ErrorCode::InvariantViolated,
            "E*-degree bound violated at node " + std::to_string(v));
  }
  std::vector<int64_t> inc_node_off(static_cast<size_t>(g.node_count()) + 1, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    inc_node_off[v + 1] = inc_node_off[v] + dstar[v];
  }
  std::vector<int32_t> inc_node(static_cast<size_t>(inc_node_off.back()));
  {
    std::vector<int64_t> cursor(inc_node_off.begin(), inc_node_off.end() - 1);
    for (size_t idx = 0; idx < estar.size(); ++idx) {
      const Edge& e = g.edge(estar[idx]);
      inc_node[static_cast<size_t>(cursor[e.u]++)] = static_cast<int32_t>(idx);
      inc_node[static_cast<size_t>(cursor[e.v]++)] = static_cast<int32_t>(idx);
    }
  }

  // E*-edge adjacency: all other E*-edges sharing an endpoint.
  std::vector<int64_t> adj_off(estar.size() + 1, 0);
  for (size_t idx = 0; idx < estar.size(); ++idx) {
    const Edge& e = g.edge(estar[idx]);
    adj_off[idx + 1] = adj_off[idx] + (dstar[e.u] - 1) + (dstar[e.v] - 1);
  }
  std::vector<int32_t> adj(static_cast<size_t>(adj_off.back()));
  {
    std::vector<int64_t> cursor(adj_off.begin(), adj_off.end() - 1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (int64_t a = inc_node_off[v]; a < inc_node_off[v + 1]; ++a) {
        for (int64_t b = inc_node_off[v]; b < inc_node_off[v + 1]; ++b) {
          if (a == b) continue;
          adj[static_cast<size_t>(cursor[inc_node[static_cast<size_t>(a)]]++)] =
              inc_node[static_cast<size_t>(b)];
        }
      }
    }
  }

  // Space accounting: each heavy node's machine must hold its 2-hop
  // E*-ball.
  if (!estar.empty() && !sel.heavy_nodes.empty()) {
    std::vector<Edge> estar_edges;
    estar_edges.reserve(estar.size());
    for (EdgeId e : estar) estar_edges.push_back(g.edge(e));
    Graph estar_graph = Graph::from_edges(g.node_count(), std::move(estar_edges));
    cluster.collect_balls(estar_graph, 2, sel.heavy_nodes);
  }

  // Per-heavy incident E*-lists, aligned with sel.heavy_nodes.
  std::vector<int64_t> inc_off(sel.heavy_nodes.size() + 1, 0);
  std::vector<int32_t> inc;
  std::vector<int64_t> weights(sel.heavy_nodes.size());
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    NodeId v = sel.heavy_nodes[h];
    for (int64_t a = inc_node_off[v]; a < inc_node_off[v + 1]; ++a) {
      inc.push_back(inc_node[static_cast<size_t>(a)]);
    }
    inc_off[h + 1] = static_cast<int64_t>(inc.size());
    weights[h] = g.degree(v);
  }

  std::vector<int64_t> edge_points(estar.begin(), estar.end());
  HashFamily fam =
      family_for(cfg, cfg.k_selection, g.edge_count(), 32 * g.max_degree());
  LocalMinMatchingObjective objective(fam, std::move(edge_points),
                                      std::move(adj_off), std::move(adj),
                                      std::move(inc_off), std::move(inc),
                                      std::move(weights));

  CandidateMatching cm;
  Rational bound = objective.expectation_lower_bound(&cm.per_heavy_bound);
  cm.certificate = find_seed(fam, objective, cfg.derand, &cluster, bound);
  cm.low_class_path = sel.cls <= 4;

  std::vector<char> flags = objective.matching_flags(cm.certificate.seed);
  std::vector<char> matched_node(static_cast<size_t>(g.node_count()), 0);
  for (size_t idx = 0; idx < estar.size(); ++idx) {
    if (!flags[idx]) continue;
    const Edge& e = g.edge(estar[idx]);
    require(!matched_node[e.u] && !matched_node[e.v],
            ErrorCode::InvariantViolated, "candidate matching not a matching");
    matched_node[e.u] = matched_node[e.v] = 1;
    cm.edges.push_back(estar[idx]);
  }
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    NodeId v = sel.heavy_nodes[h];
    int matched = 0;
    for (int64_t a = inc_node_off[v]; a < inc_node_off[v + 1]; ++a) {
      matched += flags[static_cast<size_t>(inc_node[static_cast<size_t>(a)])];
    }
    if (matched == 1) {
      cm.matched_heavy.push_back(v);
      cm.weight += g.degree(v);
    }
  }
  require(Rational(cm.weight) == cm.certificate.achieved,
          ErrorCode::EvaluatorInconsistent,
          "selection weight disagrees with the certificate");

  // Edge-degree mass guarantee: for i <= 4 the 1/6 bound is unconditional;
  // for deeper classes the 1/27 bound presumes the unslacked invariant
  // constants, so it is checked and reported, not enforced.
  Rational target = cm.low_class_path ? Rational(1, 6) : Rational(1, 27);
  bool all_pass = true;
  for (size_t h = 0; h < sel.heavy_nodes.size() && all_pass; ++h) {
    NodeId v = sel.heavy_nodes[h];
    if (dstar[v] == 0) {
      all_pass = false;
      break;
    }
    bool deg0 = false;
    std::map<int64_t, int64_t> by_degree;
    for (int64_t a = inc_node_off[v]; a < inc_node_off[v + 1]; ++a) {
      size_t idx = static_cast<size_t>(inc_node[static_cast<size_t>(a)]);
      const Edge& e = g.edge(estar[idx]);
      int64_t edeg = (dstar[e.u] - 1) + (dstar[e.v] - 1);
      if (edeg == 0) {
        deg0 = true;
        break;
      }
      ++by_degree[edeg];
    }
    if (deg0) continue;
    Rational mass;
    for (const auto& [deg, count] : by_degree) mass += Rational(count, deg);
    if (mass < target) all_pass = false;
  }
  cm.mass_hypothesis_held = all_pass;
  require(!cm.low_class_path || all_pass || sel.heavy_nodes.empty(),
          ErrorCode::InvariantViolated,
          "low-class edge mass bound failed");

  cluster.charge("apply_matching", cluster.charges().broadcast_rounds, 1,
                 static_cast<int64_t>(cm.edges.size()));
  return cm;
}

MatchingResult maximal_matching(const Graph& g, const AlgoConfig& cfg,
                                Cluster& cluster) {
  MatchingResult result;
  cluster.load_input(g.node_count() + g.edge_count());
  Graph cur = g;
  int iter = 0;
  while (cur.edge_count() > 0) {
    ++iter;
    require(iter <= g.edge_count() + 1, ErrorCode::InvariantViolated,
            "matching loop failed to make progress");
    HeavySelection sel = select_heavy_class(cur, cfg.delta,
                                            SelectionMode::Matching);
    cluster.charge("select_heavy_class", 3 * cluster.charges().sort_rounds,
                   std::min(cur.edge_count() + 1, cluster.spec().space_words),
                   cur.edge_count());
    SparsifyEdgesResult sp = sparsify_edges(cur, sel, cfg, cluster);
    CandidateMatching cm = find_round_matching(cur, sp.estar, sel, cfg, cluster);

    IterationRow row;
    row.iter = iter;
    row.edges_before = cur.edge_count();
    row.cls = sel.cls;
    row.heavy_degree_sum = sel.heavy_degree_sum;
    row.stages = sp.stages;
    row.bound = cm.certificate.bound;
    row.achieved = cm.certificate.achieved;
    row.low_class_path = cm.low_class_path;

    std::vector<char> remove(static_cast<size_t>(cur.node_count()), 0);
    for (EdgeId e : cm.edges) {
      result.matching.push_back(cur.edge(e));
      remove[cur.edge(e).u] = 1;
      remove[cur.edge(e).v] = 1;
    }
    Graph next = remove_nodes(cur, remove);
    row.edges_removed = cur.edge_count() - next.edge_count();
    require(2 * row.edges_removed >= cm.weight, ErrorCode::InvariantViolated,
            "removed fewer edges than the certified weight allows");
    row.rounds_after = cluster.rounds();
    result.iterations.push_back(row);
    for (auto& cert : sp.certificates) {
      result.certificates.push_back(std::move(cert));
    }
    result.certificates.push_back(std::move(cm.certificate));
    cur = std::move(next);
  }
  VerificationReport report = verify_matching(g, result.matching);
  require(report.pass, ErrorCode::InvariantViolated,
          "maximal matching verification failed: " + report.witness);
  return result;
}

}  // namespace mpcd
