#include "mpcd/mis.hpp"

#include <algorithm>
#include <map>

#include "mpcd/objectives.hpp"
#include "mpcd/oracle.hpp"

namespace mpcd {

namespace {

HashFamily node_family(const AlgoConfig& cfg, int k, const Graph& g,
                       int64_t slack_scale) {
  HashFamily f;
  f.k = k;
  f.p = cfg.field_prime(std::max<NodeId>(1, g.node_count()), slack_scale);
  f.domain_size = std::max<NodeId>(1, g.node_count());
  f.range_size = f.p;
  return f;
}

// Exact check of sum_{u in members ~ v} 1/deg(u) >= target, grouping terms
// by degree so the rational arithmetic stays small.
bool unit_mass_at_least(const Graph& g, const std::vector<char>& member,
                        NodeId v, const Rational& target) {
  std::map<int64_t, int64_t> by_degree;
  for (NodeId u : g.neighbors(v)) {
    if (member[u]) ++by_degree[g.degree(u)];
  }
  Rational mass;
  for (const auto& [deg, count] : by_degree) mass += Rational(count, deg);
  return mass >= target;
}

}  // namespace

SparsifyNodesResult sparsify_nodes(const Graph& g, const HeavySelection& sel,
                                   const AlgoConfig& cfg, Cluster& cluster) {
  require(sel.mode == SelectionMode::Mis, ErrorCode::InvalidParams,
          "MIS-mode selection required");
  SparsifyNodesResult out;
  out.jprime = sel.seed_nodes;
  const int k = cfg.delta.inv;
  const int i = sel.cls;
  if (i <= 4) return out;

  const int64_t n = std::max<NodeId>(2, g.node_count());
  const int64_t t3 = pow_ceil(n, 3, static_cast<unsigned>(k));
  const int64_t t4 = pow_ceil(n, 4, static_cast<unsigned>(k));

  const int64_t class_low =
      pow_ceil(n, static_cast<unsigned>(i - 1), static_cast<unsigned>(k));

  std::vector<char> alive(static_cast<size_t>(g.node_count()), 0);
  for (NodeId v : out.jprime) alive[v] = 1;
  std::vector<NodeId> cur = out.jprime;

  HashFamily fam = node_family(cfg, cfg.k_concentration, g, 1);
  const int64_t threshold =
      sampling_threshold(fam.p, n, cfg.delta.inv);

  // Fixed-point weights for the type-B sums: W_u ~ kWeightScale * L / deg(u)
  // where L is the class floor, so W_u in [0, kWeightScale].
  auto weight_of = [&](NodeId u) {
    return kWeightScale * class_low / std::max<int64_t>(1, g.degree(u));
  };

  for (int j = 1; j <= i - 4; ++j) {
    std::vector<int64_t> points;
    std::vector<int64_t> weights;
    std::vector<int64_t> group_sizes_j;
    std::vector<int64_t> group_sizes_b;
    std::vector<SubsampleGoodness::Machine> machines;

    // Type J: per member of J_{j-1}, its alive neighbors with unit weight.
    for (NodeId v : cur) {
      int64_t count = 0;
      for (NodeId u : g.neighbors(v)) {
        if (alive[u]) {
          points.push_back(u);
          weights.push_back(1);
          ++count;
        }
      }
      if (count > 0) group_sizes_j.push_back(count);
    }
    int64_t type_j_items = static_cast<int64_t>(points.size());
    // Type B: per heavy node, its alive neighbors with Z_v weights.
    for (NodeId v : sel.heavy_nodes) {
      int64_t count = 0;
      for (NodeId u : g.neighbors(v)) {
        if (alive[u]) {
          points.push_back(u);
          weights.push_back(weight_of(u));
          ++count;
        }
      }
      if (count > 0) group_sizes_b.push_back(count);
    }

    Placement place_j = cluster.distribute_grouped(group_sizes_j, t4);
    Placement place_b = cluster.distribute_grouped(group_sizes_b, t4);
    for (const MachineRange& r : place_j.machines) {
      int64_t t = r.load();
      int64_t lambda = concentration_deviation(n, k, t);
      machines.push_back(
          {r.begin, r.end, INT64_MIN, t * threshold + lambda * fam.p});
    }
    for (const MachineRange& r : place_b.machines) {
      int64_t t = r.load();
      int64_t lambda = concentration_deviation(n, k, t);
      __int128 wsum = 0;
      for (int64_t idx = r.begin; idx < r.end; ++idx) {
        wsum += weights[static_cast<size_t>(type_j_items + idx)];
      }
      __int128 lo = static_cast<__int128>(threshold) * wsum -
                    static_cast<__int128>(fam.p) * lambda * kWeightScale;
      require(lo > INT64_MIN && lo < INT64_MAX, ErrorCode::InvalidParams,
              "goodness window overflow; reduce chunk size or field");
      machines.push_back({type_j_items + r.begin, type_j_items + r.end,
                          static_cast<int64_t>(lo), INT64_MAX});
    }

    SubsampleGoodness objective(fam, threshold, std::move(points),
                                std::move(weights), std::move(machines));
    Rational bound = objective.expectation_lower_bound();
    ProgressCertificate cert =
        find_seed(fam, objective, cfg.derand, &cluster, bound);

    std::vector<NodeId> next;
    next.reserve(cur.size());
    for (NodeId v : cur) {
      if (eval_field(fam, cert.seed, v) < threshold) {
        next.push_back(v);
      } else {
        alive[v] = 0;
      }
    }
    cur = std::move(next);
    cluster.charge("apply_subsample", cluster.charges().broadcast_rounds, 1,
                   static_cast<int64_t>(cur.size()));
    out.certificates.push_back(std::move(cert));
    ++out.stages;

    // zeta-relaxed stage invariants (record-only).
    int64_t pfj = pow_floor(n, static_cast<unsigned>(j), static_cast<unsigned>(k));
    int64_t pcj = pow_ceil(n, static_cast<unsigned>(j), static_cast<unsigned>(k));
    for (NodeId v : cur) {
      int64_t dj = 0;
      for (NodeId u : g.neighbors(v)) dj += alive[u];
      __int128 lhs = static_cast<__int128>(dj) * cfg.zeta_den * pfj;
      __int128 rhs = static_cast<__int128>(cfg.zeta_den + cfg.zeta_num) *
                     g.degree(v);
      if (lhs > rhs && dj > t3) ++out.stage_invariant_misses;
    }
    // Invariant (ii) with the weaker denominator-4 form:
    // sum 1/deg >= delta (1 - zeta) / (4 n^{j delta}).
    Rational target = Rational(cfg.zeta_den - cfg.zeta_num,
                               static_cast<int64_t>(cfg.zeta_den) * 4 * k) /
                      Rational(pcj);
    for (NodeId v : sel.heavy_nodes) {
      if (!unit_mass_at_least(g, alive, v, target)) {
        ++out.stage_invariant_misses;
      }
    }
  }

  require(!cur.empty(), ErrorCode::InvariantViolated,
          "node sparsification emptied J'");
  // Final bounds consumed by the selection round.
  for (NodeId v : cur) {
    int64_t dj = 0;
    for (NodeId u : g.neighbors(v)) dj += alive[u];
    require(dj <= 2 * t4, ErrorCode::InvariantViolated,
            "node " + std::to_string(v) + " keeps J'-degree " +
                std::to_string(dj) + " > 2n^{4d}");
  }
  int64_t pcf =
      pow_ceil(n, static_cast<unsigned>(i - 4), static_cast<unsigned>(k));
  Rational final_target =
      Rational(cfg.zeta_den - cfg.zeta_num,
               static_cast<int64_t>(cfg.zeta_den) * 4 * k) /
      Rational(pcf);
  for (NodeId v : sel.heavy_nodes) {
    require(unit_mass_at_least(g, alive, v, final_target),
            ErrorCode::InvariantViolated,
            "heavy node " + std::to_string(v) +
                " lost its weighted neighbor mass during sparsification");
  }

  out.jprime = std::move(cur);
  return out;
}

BoundedNeighborhoods build_bounded_neighborhoods(
    const Graph& g, const std::vector<NodeId>& jprime,
    const HeavySelection& sel, const AlgoConfig& cfg, Cluster& cluster) {
  const int64_t n = std::max<NodeId>(2, g.node_count());
  const int k = cfg.delta.inv;
  const int64_t t4 = pow_ceil(n, 4, static_cast<unsigned>(k));

  BoundedNeighborhoods out;
  out.jnodes = jprime;
  std::vector<int32_t> local(static_cast<size_t>(g.node_count()), -1);
  for (size_t i = 0; i < out.jnodes.size(); ++i) {
    local[out.jnodes[i]] = static_cast<int32_t>(i);
  }

  out.adj_off.assign(out.jnodes.size() + 1, 0);
  for (size_t i = 0; i < out.jnodes.size(); ++i) {
    int64_t d = 0;
    for (NodeId u : g.neighbors(out.jnodes[i])) d += local[u] >= 0;
    out.adj_off[i + 1] = out.adj_off[i] + d;
  }
  out.adj.resize(static_cast<size_t>(out.adj_off.back()));
  for (size_t i = 0; i < out.jnodes.size(); ++i) {
    int64_t at = out.adj_off[i];
    for (NodeId u : g.neighbors(out.jnodes[i])) {
      if (local[u] >= 0) out.adj[static_cast<size_t>(at++)] = local[u];
    }
  }
  for (size_t i = 0; i < out.jnodes.size(); ++i) {
    int64_t dj = out.adj_off[i + 1] - out.adj_off[i];
    require(dj <= 2 * t4, ErrorCode::InvariantViolated,
            "J'-degree bound violated before neighborhood collection");
  }

  out.nv_off.assign(sel.heavy_nodes.size() + 1, 0);
  int64_t max_words = 0;
  int64_t total_words = 0;
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    NodeId v = sel.heavy_nodes[h];
    int64_t taken = 0;
    int64_t words = 1;
    for (NodeId u : g.neighbors(v)) {
      if (local[u] < 0) continue;
      if (taken == t4) break;  // deterministic truncation: lowest ids first
      out.nv.push_back(local[u]);
      size_t lu = static_cast<size_t>(local[u]);
      words += 2 + (out.adj_off[lu + 1] - out.adj_off[lu]);
      ++taken;
    }
    out.nv_off[h + 1] = static_cast<int64_t>(out.nv.size());
    require(words <= cluster.spec().space_words, ErrorCode::BallTooLarge,
            "bounded neighborhood of node " + std::to_string(v) +
                " needs " + std::to_string(words) + " words");
    max_words = std::max(max_words, words);
    total_words += words;
  }
  cluster.charge("collect_neighborhoods", 2, std::max<int64_t>(1, max_words),
                 total_words);

  // Weighted-mass disjunctions (recorded; hard-asserted on the i <= 4
  // path by the caller, where they hold unconditionally).
  Rational tenth_delta(1, 10ll * k);
  bool nv_ok = true;
  bool full_ok = true;
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    NodeId v = sel.heavy_nodes[h];
    bool has_j_neighbor = false;
    bool deg0_full = false;
    std::map<int64_t, int64_t> full_by_degree;
    for (NodeId u : g.neighbors(v)) {
      if (local[u] < 0) continue;
      has_j_neighbor = true;
      size_t lu = static_cast<size_t>(local[u]);
      int64_t dj = out.adj_off[lu + 1] - out.adj_off[lu];
      if (dj == 0) {
        deg0_full = true;
        break;
      }
      ++full_by_degree[dj];
    }
    if (!has_j_neighbor) continue;
    if (!deg0_full) {
      Rational mass;
      for (const auto& [deg, count] : full_by_degree) {
        mass += Rational(count, deg);
      }
      if (mass < tenth_delta) full_ok = false;
    }
    bool deg0_nv = false;
    std::map<int64_t, int64_t> nv_by_degree;
    for (int64_t a = out.nv_off[h]; a < out.nv_off[h + 1]; ++a) {
      size_t lu = static_cast<size_t>(out.nv[static_cast<size_t>(a)]);
      int64_t dj = out.adj_off[lu + 1] - out.adj_off[lu];
      if (dj == 0) {
        deg0_nv = true;
        break;
      }
      ++nv_by_degree[dj];
    }
    if (!deg0_nv) {
      Rational mass;
      for (const auto& [deg, count] : nv_by_degree) {
        mass += Rational(count, deg);
      }
      if (mass < tenth_delta) nv_ok = false;
    }
  }
  out.lemma_nv_mass_holds = nv_ok;
  out.lemma_full_mass_holds = full_ok;
  return out;
}

CandidateIS find_round_is(const Graph& g, const BoundedNeighborhoods& neigh,
                          const HeavySelection& sel, const AlgoConfig& cfg,
                          Cluster& cluster) {
  CandidateIS out;
  out.low_class_path = sel.cls <= 4;

  std::vector<int64_t> node_points(neigh.jnodes.begin(), neigh.jnodes.end());
  std::vector<int64_t> weights(sel.heavy_nodes.size());
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    weights[h] = g.degree(sel.heavy_nodes[h]);
  }
  HashFamily fam =
      node_family(cfg, cfg.k_selection, g, 32 * g.max_degree());
  LocalMinISObjective objective(fam, std::move(node_points),
                                std::vector<int64_t>(neigh.adj_off),
                                std::vector<int32_t>(neigh.adj),
                                std::vector<int64_t>(neigh.nv_off),
                                std::vector<int32_t>(neigh.nv),
                                std::move(weights));
  Rational bound =
      objective.expectation_lower_bound(cfg.delta.inv, &out.per_heavy_bound);
  out.certificate = find_seed(fam, objective, cfg.derand, &cluster, bound);

  std::vector<char> flags = objective.is_flags(out.certificate.seed);
  for (size_t i = 0; i < neigh.jnodes.size(); ++i) {
    if (flags[i]) out.is_nodes.push_back(neigh.jnodes[i]);
  }
  // Independence against the full graph.
  std::vector<char> in_is(static_cast<size_t>(g.node_count()), 0);
  for (NodeId v : out.is_nodes) in_is[v] = 1;
  for (NodeId v : out.is_nodes) {
    for (NodeId u : g.neighbors(v)) {
      require(!in_is[u], ErrorCode::InvariantViolated,
              "candidate IS is not independent");
    }
  }
  for (size_t h = 0; h < sel.heavy_nodes.size(); ++h) {
    bool hit = false;
    for (int64_t a = neigh.nv_off[h]; a < neigh.nv_off[h + 1] && !hit; ++a) {
      hit = flags[static_cast<size_t>(neigh.nv[static_cast<size_t>(a)])];
    }
    if (hit) {
      out.covered_heavy.push_back(sel.heavy_nodes[h]);
      out.weight += g.degree(sel.heavy_nodes[h]);
    }
  }
  require(Rational(out.weight) == out.certificate.achieved,
          ErrorCode::EvaluatorInconsistent,
          "IS selection weight disagrees with the certificate");
  cluster.charge("apply_is", cluster.charges().broadcast_rounds, 1,
                 static_cast<int64_t>(out.is_nodes.size()));
  return out;
}

MisResult maximal_independent_set(const Graph& g, const AlgoConfig& cfg,
                                  Cluster& cluster) {
  MisResult result;
  cluster.load_input(g.node_count() + g.edge_count());
  Graph cur = g;
  std::vector<char> present(static_cast<size_t>(g.node_count()), 1);
  int iter = 0;
  while (true) {
    for (NodeId v = 0; v < cur.node_count(); ++v) {
      if (present[v] && cur.degree(v) == 0) {
        result.mis.push_back(v);
        present[v] = 0;
      }
    }
    if (cur.edge_count() == 0) break;
    ++iter;
    require(iter <= g.edge_count() + 1, ErrorCode::InvariantViolated,
            "MIS loop failed to make progress");

    HeavySelection sel = select_heavy_class(cur, cfg.delta, SelectionMode::Mis);
    cluster.charge("select_heavy_class", 3 * cluster.charges().sort_rounds,
                   std::min(cur.edge_count() + 1, cluster.spec().space_words),
                   cur.edge_count());
    SparsifyNodesResult sp = sparsify_nodes(cur, sel, cfg, cluster);
    BoundedNeighborhoods neigh =
        build_bounded_neighborhoods(cur, sp.jprime, sel, cfg, cluster);
    if (sel.cls <= 4) {
      require(neigh.lemma_nv_mass_holds && neigh.lemma_full_mass_holds,
              ErrorCode::InvariantViolated,
              "low-class weighted mass bound failed");
    }
    CandidateIS cis = find_round_is(cur, neigh, sel, cfg, cluster);

    IterationRow row;
    row.iter = iter;
    row.edges_before = cur.edge_count();
    row.cls = sel.cls;
    row.heavy_degree_sum = sel.heavy_degree_sum;
    row.stages = sp.stages;
    row.bound = cis.certificate.bound;
    row.achieved = cis.certificate.achieved;
    row.low_class_path = cis.low_class_path;
    row.is_size = static_cast<int64_t>(cis.is_nodes.size());

    std::vector<char> remove(static_cast<size_t>(cur.node_count()), 0);
    for (NodeId v : cis.is_nodes) {
      remove[v] = 1;
      result.mis.push_back(v);
    }
    int64_t closed = static_cast<int64_t>(cis.is_nodes.size());
    for (NodeId v : cis.is_nodes) {
      for (NodeId u : cur.neighbors(v)) {
        if (!remove[u]) {
          remove[u] = 1;
          present[u] = 0;
          ++closed;
        }
      }
    }
    for (NodeId v : cis.is_nodes) present[v] = 0;
    row.is_neighborhood = closed;

    Graph next = remove_nodes(cur, remove);
    row.edges_removed = cur.edge_count() - next.edge_count();
    require(2 * row.edges_removed >= cis.weight, ErrorCode::InvariantViolated,
            "removed fewer edges than the certified weight allows");
    row.rounds_after = cluster.rounds();
    result.iterations.push_back(row);
    for (auto& cert : sp.certificates) {
      result.certificates.push_back(std::move(cert));
    }
    result.certificates.push_back(std::move(cis.certificate));
    cur = std::move(next);
  }
  std::sort(result.mis.begin(), result.mis.end());
  VerificationReport report = verify_mis(g, result.mis);
  require(report.pass, ErrorCode::InvariantViolated,
          "MIS verification failed: " + report.witness);
  return result;
}

}  // namespace mpcd
