#include "mpcd/lowdeg.hpp"

#include <algorithm>
#include <set>

#include "mpcd/parallel.hpp"

namespace mpcd {

namespace {

// 2-hop neighbor lists (excluding the node itself).
std::vector<std::vector<NodeId>> two_hop_lists(const Graph& g) {
  std::vector<std::vector<NodeId>> out(static_cast<size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::set<NodeId> near;
    for (NodeId u : g.neighbors(v)) {
      near.insert(u);
      for (NodeId w : g.neighbors(u)) {
        if (w != v) near.insert(w);
      }
    }
    out[static_cast<size_t>(v)].assign(near.begin(), near.end());
  }
  return out;
}

int64_t eval_poly_mod(const std::vector<int64_t>& coef, int64_t x, int64_t q) {
  __int128 acc = 0;
  for (size_t j = coef.size(); j-- > 0;) {
    acc = (acc * x + coef[j]) % q;
  }
  return static_cast<int64_t>(acc);
}

}  // namespace

Distance2Coloring distance2_coloring(const Graph& g, const AlgoConfig& cfg,
                                     Cluster& cluster) {
  Distance2Coloring out;
  out.chi.assign(static_cast<size_t>(g.node_count()), 0);
  if (g.edge_count() == 0) {
    out.color_count = 1;
    return out;
  }
  // Space accounting: every node's machine holds its 2-hop ball.
  {
    std::vector<NodeId> centers(static_cast<size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) centers[static_cast<size_t>(v)] = v;
    cluster.collect_balls(g, 2, centers);
  }
  auto n2 = two_hop_lists(g);
  int64_t delta2 = 1;
  for (const auto& lst : n2) {
    delta2 = std::max<int64_t>(delta2, static_cast<int64_t>(lst.size()));
  }

  for (NodeId v = 0; v < g.node_count(); ++v) out.chi[v] = v;
  int64_t colors = g.node_count();

  while (true) {
    // Candidate (t, q): q prime, q > t * delta2, q^{t+1} >= colors.
    int64_t best_q = -1;
    int best_t = -1;
    for (int t = 1; t <= 40; ++t) {
      int64_t min_q = delta2 * t + 1;
      while (bigint_pow(Bigint(min_q), static_cast<unsigned>(t) + 1) < colors) {
        ++min_q;
      }
      int64_t q = next_prime(min_q);
      if (best_q < 0 || q < best_q) {
        best_q = q;
        best_t = t;
      }
      if (bigint_pow(Bigint(delta2 * t + 1), static_cast<unsigned>(t) + 1) >=
          colors) {
        break;  // larger t cannot lower q further
      }
    }
    if (best_q * best_q >= colors) break;  // fixed point reached
    int64_t q = best_q;
    int t = best_t;

    std::vector<Color> next(static_cast<size_t>(g.node_count()), 0);
    std::vector<std::vector<int64_t>> poly(static_cast<size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      std::vector<int64_t> coef(static_cast<size_t>(t) + 1, 0);
      int64_t rem = out.chi[v];
      for (int d = 0; d <= t; ++d) {
        coef[static_cast<size_t>(d)] = rem % q;
        rem /= q;
      }
      poly[static_cast<size_t>(v)] = std::move(coef);
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
      int64_t pick = -1;
      for (int64_t x = 0; x < q && pick < 0; ++x) {
        int64_t mine = eval_poly_mod(poly[static_cast<size_t>(v)], x, q);
        bool clash = false;
        for (NodeId u : n2[static_cast<size_t>(v)]) {
          if (eval_poly_mod(poly[static_cast<size_t>(u)], x, q) == mine) {
            clash = true;
            break;
          }
        }
        if (!clash) pick = x;
      }
      require(pick >= 0, ErrorCode::InvariantViolated,
              "polynomial color reduction found no separating point");
      next[v] = static_cast<Color>(
          pick * q + eval_poly_mod(poly[static_cast<size_t>(v)], pick, q));
    }
    out.chi = std::move(next);
    colors = q * q;
    ++out.reduction_rounds;
    cluster.charge("color_reduction", 1, 1, g.node_count());
  }

  // The polynomial reduction stalls near (2 delta2)^2; compact the palette
  // down to delta2 + 1 by recoloring one color class per round. Same-color
  // nodes are pairwise more than two hops apart, so a class recolors in
  // parallel without conflicts. Optimal round count is a non-goal; the
  // extra rounds are charged.
  {
    std::vector<std::vector<NodeId>> by_color(static_cast<size_t>(colors));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      by_color[static_cast<size_t>(out.chi[v])].push_back(v);
    }
    int64_t target = delta2 + 1;
    for (int64_t c = colors - 1; c >= target; --c) {
      if (by_color[static_cast<size_t>(c)].empty()) continue;
      for (NodeId v : by_color[static_cast<size_t>(c)]) {
        std::vector<char> used(static_cast<size_t>(target), 0);
        for (NodeId u : n2[static_cast<size_t>(v)]) {
          if (out.chi[u] < target) used[static_cast<size_t>(out.chi[u])] = 1;
        }
        Color pick = -1;
        for (int64_t x = 0; x < target && pick < 0; ++x) {
          if (!used[static_cast<size_t>(x)]) pick = static_cast<Color>(x);
        }
        require(pick >= 0, ErrorCode::InvariantViolated,
                "color compaction ran out of slots");
        out.chi[v] = pick;
      }
      ++out.reduction_rounds;
      cluster.charge("color_compaction", 1, 1,
                     static_cast<int64_t>(by_color[static_cast<size_t>(c)].size()));
    }
    colors = std::min<int64_t>(colors, target);
  }

  out.color_count = colors;
  int64_t delta = std::max<int64_t>(1, g.max_degree());
  Bigint cap = Bigint(cfg.d2_color_cap) * bigint_pow(Bigint(delta), 4);
  require(Bigint(out.color_count) <= cap, ErrorCode::InvariantViolated,
          "distance-2 palette exceeded the Delta^4 cap");
  return out;
}

std::vector<int> run_phases(const Graph& g, const std::vector<char>& active0,
                            const std::vector<Color>& chi,
                            const HashFamily& hstar,
                            const std::vector<Seed>& seeds) {
  std::vector<int> status(static_cast<size_t>(g.node_count()), 0);
  std::vector<int64_t> hv(static_cast<size_t>(hstar.domain_size));
  std::vector<Color> used;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!active0[v]) {
      status[v] = INT32_MIN;  // not participating
    } else {
      used.push_back(chi[v]);
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (size_t phase = 0; phase < seeds.size(); ++phase) {
    for (Color c : used) {
      hv[static_cast<size_t>(c)] = eval_field(hstar, seeds[phase], c);
    }
    auto key = [&](NodeId v) {
      return std::make_pair(hv[static_cast<size_t>(chi[v])], chi[v]);
    };
    std::vector<NodeId> joining;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (status[v] != 0) continue;
      bool is_min = true;
      for (NodeId u : g.neighbors(v)) {
        if (status[u] != 0) continue;
        if (!(key(v) < key(u))) {
          is_min = false;
          break;
        }
      }
      if (is_min) joining.push_back(v);
    }
    for (NodeId v : joining) status[v] = static_cast<int>(phase) + 1;
    for (NodeId v : joining) {
      for (NodeId u : g.neighbors(v)) {
        if (status[u] == 0) status[u] = -(static_cast<int>(phase) + 1);
      }
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (status[v] == INT32_MIN) status[v] = 0;
  }
  return status;
}

int ball_local_status(const Graph& g, const std::vector<char>& present,
                      const std::vector<Color>& chi, const HashFamily& hstar,
                      const std::vector<Seed>& seeds, NodeId center) {
  require(present[center], ErrorCode::InvalidParams,
          "center must participate");
  int radius = 2 * static_cast<int>(seeds.size());
  // BFS restricted to participating nodes.
  std::vector<int> dist(static_cast<size_t>(g.node_count()), -1);
  std::vector<NodeId> order{center};
  dist[center] = 0;
  for (size_t head = 0; head < order.size(); ++head) {
    NodeId v = order[head];
    if (dist[v] == radius) continue;
    for (NodeId u : g.neighbors(v)) {
      if (present[u] && dist[u] < 0) {
        dist[u] = dist[v] + 1;
        order.push_back(u);
      }
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<NodeId> back;
  Graph ball = induced_subgraph(g, order, &back);
  std::vector<char> active(back.size(), 1);
  std::vector<Color> ball_chi(back.size());
  NodeId local_center = -1;
  for (size_t i = 0; i < back.size(); ++i) {
    ball_chi[i] = chi[back[i]];
    if (back[i] == center) local_center = static_cast<NodeId>(i);
  }
  std::vector<int> status = run_phases(ball, active, ball_chi, hstar, seeds);
  return status[static_cast<size_t>(local_center)];
}

namespace {

int64_t max_ball_words(const Graph& g, const std::vector<char>& present,
                       int radius, const SpaceModel* space) {
  const Graph* target = space && space->graph ? space->graph : &g;
  int r = space && space->graph ? radius + 1 : radius;
  int64_t worst = 0;
  for (NodeId v = 0; v < target->node_count(); ++v) {
    if (!space && !present[v]) continue;
    Ball b = bfs_ball(*target, v, r);
    worst = std::max(worst, b.words());
  }
  return worst;
}

}  // namespace

StagePlan make_stage_plan(const Graph& g_stage, const std::vector<char>& present,
                          int64_t color_count, const AlgoConfig& cfg,
                          Cluster& cluster, const SpaceModel* space) {
  StagePlan plan;
  int64_t delta = std::max<int64_t>(1, g_stage.max_degree());
  int64_t domain = std::max<int64_t>(
      color_count, pow_ceil(std::min<int64_t>(delta, 1ll << 15), 4, 1));
  plan.hstar.k = 2;
  plan.hstar.p = next_prime(std::max<int64_t>(domain, 2));
  plan.hstar.domain_size = plan.hstar.p;
  plan.hstar.range_size = plan.hstar.p;
  plan.family_size = plan.hstar.p * plan.hstar.p;
  require(plan.family_size <= cfg.sequence_budget,
          ErrorCode::SequenceSpaceTooLarge,
          "|H*| = " + std::to_string(plan.family_size) +
              " exceeds the sequence budget");

  int64_t live = 0;
  for (NodeId v = 0; v < g_stage.node_count(); ++v) live += present[v] ? 1 : 0;
  int64_t sim_cost = g_stage.node_count() + g_stage.edge_count() +
                     std::min<int64_t>(live, plan.hstar.p);
  int ell_max = 1;
  while (true) {
    Bigint seqs = bigint_pow(Bigint(plan.family_size),
                             static_cast<unsigned>(ell_max) + 1);
    if (seqs > cfg.sequence_budget) break;
    if (seqs * sim_cost > cfg.stage_cost_budget) break;
    ++ell_max;
  }
  for (int ell = ell_max; ell >= 1; --ell) {
    if (max_ball_words(g_stage, present, 2 * ell, space) <=
        cluster.spec().space_words) {
      plan.ell = ell;
      plan.radius = 2 * ell;
      plan.sequence_count = 1;
      for (int i = 0; i < ell; ++i) plan.sequence_count *= plan.family_size;
      return plan;
    }
  }
  fail(ErrorCode::BallTooLarge,
       "even radius-2 balls do not fit machine space");
}

CompressedStageResult compressed_stage(const Graph& g_stage,
                                       const std::vector<char>& present,
                                       const std::vector<Color>& chi,
                                       const StagePlan& plan,
                                       const AlgoConfig& cfg, Cluster& cluster,
                                       bool first_stage,
                                       const SpaceModel* space) {
  (void)cfg;
  CompressedStageResult out;
  out.edges_before = g_stage.edge_count();
  out.sequences_evaluated = plan.sequence_count;

  // Ball space: the initial collection is the charged preprocessing; later
  // stages only receive removal notifications (one round) and shrink the
  // balls they already hold.
  if (first_stage) {
    std::vector<NodeId> centers;
    const Graph* target = space && space->graph ? space->graph : &g_stage;
    for (NodeId v = 0; v < target->node_count(); ++v) {
      if (space || present[v]) centers.push_back(v);
    }
    if (!centers.empty()) {
      int radius = space ? plan.radius + 1 : plan.radius;
      cluster.collect_balls(*target, radius, centers);
    }
  } else {
    require(max_ball_words(g_stage, present, plan.radius, space) <=
                cluster.spec().space_words,
            ErrorCode::BallTooLarge, "stage balls exceed machine space");
    cluster.charge("ball_maintenance", cluster.charges().broadcast_rounds, 1,
                   g_stage.node_count());
  }

  auto decode = [&](int64_t index) {
    std::vector<Seed> seeds(static_cast<size_t>(plan.ell));
    for (int i = plan.ell - 1; i >= 0; --i) {
      int64_t h = index % plan.family_size;
      index /= plan.family_size;
      seeds[static_cast<size_t>(i)].coef = {h / plan.hstar.p,
                                            h % plan.hstar.p};
    }
    return seeds;
  };

  std::vector<int64_t> survivors(static_cast<size_t>(plan.sequence_count), 0);
  const int64_t K = plan.hstar.domain_size;
  std::vector<Color> used;
  for (NodeId v = 0; v < g_stage.node_count(); ++v) {
    if (present[v]) used.push_back(chi[v]);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  parallel_blocks(plan.sequence_count, [&](int64_t lo, int64_t hi) {
    std::vector<int> status(static_cast<size_t>(g_stage.node_count()));
    std::vector<int64_t> hv(static_cast<size_t>(K));
    for (int64_t seq = lo; seq < hi; ++seq) {
      std::vector<Seed> seeds = decode(seq);
      for (NodeId v = 0; v < g_stage.node_count(); ++v) {
        status[static_cast<size_t>(v)] = present[v] ? 0 : INT32_MIN;
      }
      for (int phase = 0; phase < plan.ell; ++phase) {
        const Seed& sd = seeds[static_cast<size_t>(phase)];
        for (Color c : used) {
          hv[static_cast<size_t>(c)] = eval_field(plan.hstar, sd, c);
        }
        for (NodeId v = 0; v < g_stage.node_count(); ++v) {
          if (status[v] != 0) continue;
          int64_t zv = hv[static_cast<size_t>(chi[v])];
          bool is_min = true;
          for (NodeId u : g_stage.neighbors(v)) {
            if (status[u] != 0 && status[u] != 1 + phase) continue;
            if (status[u] == 1 + phase) {
              is_min = false;  // neighbor already joined this phase
              break;
            }
            int64_t zu = hv[static_cast<size_t>(chi[u])];
            if (zu < zv || (zu == zv && chi[u] < chi[v])) {
              is_min = false;
              break;
            }
          }
          if (is_min) status[v] = 1 + phase;
        }
        // removals: joined stay marked; neighbors of joiners leave
        for (NodeId v = 0; v < g_stage.node_count(); ++v) {
          if (status[v] != 1 + phase) continue;
          for (NodeId u : g_stage.neighbors(v)) {
            if (status[u] == 0) status[u] = -(1 + phase);
          }
        }
      }
      int64_t edges = 0;
      for (const Edge& e : g_stage.edges()) {
        if (status[e.u] == 0 && status[e.v] == 0) ++edges;
      }
      survivors[static_cast<size_t>(seq)] = edges;
    }
  });

  int64_t best = 0;
  for (int64_t seq = 1; seq < plan.sequence_count; ++seq) {
    if (survivors[static_cast<size_t>(seq)] <
        survivors[static_cast<size_t>(best)]) {
      best = seq;
    }
  }
  out.sequence_index = best;
  out.chosen_seeds = decode(best);
  cluster.charge("stage_argmin",
                 cluster.charges().sort_rounds + cluster.charges().prefix_rounds,
                 1, plan.sequence_count);

  std::vector<int> status =
      run_phases(g_stage, present, chi, plan.hstar, out.chosen_seeds);
  for (NodeId v = 0; v < g_stage.node_count(); ++v) {
    if (!present[v]) continue;
    if (status[v] > 0) {
      out.is_union.push_back(v);
      out.removed.push_back(v);
    } else if (status[v] < 0) {
      out.removed.push_back(v);
    }
  }
  int64_t recount = 0;
  for (const Edge& e : g_stage.edges()) {
    if (status[e.u] == 0 && status[e.v] == 0) ++recount;
  }
  require(recount == survivors[static_cast<size_t>(best)],
          ErrorCode::EvaluatorInconsistent,
          "stage re-simulation disagrees with the scanned edge count");
  out.edges_after = recount;
  require(out.edges_before == 0 || out.edges_after < out.edges_before,
          ErrorCode::InvariantViolated,
          "compressed stage failed to remove an edge");
  cluster.charge("apply_stage", cluster.charges().broadcast_rounds, 1,
                 static_cast<int64_t>(out.removed.size()));
  return out;
}

LowdegMisResult mis_lowdeg(const Graph& g, const AlgoConfig& cfg,
                           Cluster& cluster, const SpaceModel* space) {
  int64_t delta = g.max_degree();
  require(bigint_pow(Bigint(std::max<int64_t>(1, delta)),
                     static_cast<unsigned>(cfg.delta.inv)) <=
              std::max<NodeId>(2, g.node_count()),
          ErrorCode::InvalidParams,
          "mis_lowdeg requires Delta <= n^delta");
  LowdegMisResult result;
  cluster.load_input(g.node_count() + g.edge_count());
  result.coloring = distance2_coloring(g, cfg, cluster);

  // The stage machinery breaks ties on colors, not node ids, so compacting
  // the survivor set between stages is semantics-preserving and keeps each
  // stage's work proportional to the remaining graph.
  Graph cur = g;
  std::vector<Color> chi = result.coloring.chi;
  std::vector<NodeId> back(static_cast<size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) back[static_cast<size_t>(v)] = v;
  int stage = 0;
  while (cur.edge_count() > 0) {
    ++stage;
    require(stage <= g.edge_count() + 1, ErrorCode::InvariantViolated,
            "lowdeg loop failed to make progress");
    std::vector<char> present(static_cast<size_t>(cur.node_count()), 1);
    StagePlan plan = make_stage_plan(cur, present, result.coloring.color_count,
                                     cfg, cluster, space);
    CompressedStageResult st = compressed_stage(
        cur, present, chi, plan, cfg, cluster, stage == 1, space);
    for (NodeId v : st.is_union) result.mis.push_back(back[v]);
    std::vector<char> removed(static_cast<size_t>(cur.node_count()), 0);
    for (NodeId v : st.removed) removed[v] = 1;
    std::vector<NodeId> keep;
    for (NodeId v = 0; v < cur.node_count(); ++v) {
      if (!removed[v]) keep.push_back(v);
    }
    std::vector<NodeId> sub_back;
    Graph next = induced_subgraph(cur, keep, &sub_back);
    std::vector<Color> next_chi(sub_back.size());
    std::vector<NodeId> next_back(sub_back.size());
    for (size_t i = 0; i < sub_back.size(); ++i) {
      next_chi[i] = chi[sub_back[i]];
      next_back[i] = back[sub_back[i]];
    }
    cur = std::move(next);
    chi = std::move(next_chi);
    back = std::move(next_back);

    StageRow row;
    row.stage = stage;
    row.ell = plan.ell;
    row.edges_before = st.edges_before;
    row.edges_after = st.edges_after;
    row.sequence_index = st.sequence_index;
    row.sequences_evaluated = st.sequences_evaluated;
    for (size_t i = 0; i < st.chosen_seeds.size(); ++i) {
      if (i) row.sequence_seeds += ";";
      row.sequence_seeds += seed_to_string(st.chosen_seeds[i]);
    }
    result.stages.push_back(std::move(row));
  }
  for (NodeId v = 0; v < cur.node_count(); ++v) {
    result.mis.push_back(back[v]);
  }
  std::sort(result.mis.begin(), result.mis.end());
  VerificationReport report = verify_mis(g, result.mis);
  require(report.pass, ErrorCode::InvariantViolated,
          "lowdeg MIS verification failed: " + report.witness);
  return result;
}

namespace {

// The compressed-stage path needs Delta <= n^delta, an enumerable H*, and
// stage work |H*| * (n + m) that a desk run can afford; otherwise the log-n
// modules run instead.
bool lowdeg_feasible(int64_t max_degree, int64_t node_count, int64_t edge_count,
                     const AlgoConfig& cfg) {
  int64_t delta = std::max<int64_t>(1, max_degree);
  if (bigint_pow(Bigint(delta), static_cast<unsigned>(cfg.delta.inv)) >
      std::max<int64_t>(2, node_count)) {
    return false;
  }
  int64_t pstar = next_prime(
      std::max<int64_t>(2, bigint_pow(Bigint(std::min<int64_t>(delta, 1 << 15)), 4)
                               .convert_to<int64_t>()));
  Bigint family = Bigint(pstar) * pstar;
  if (family > cfg.sequence_budget) return false;
  return family * (node_count + edge_count) <= (1ll << 29);
}

}  // namespace

DispatchMisResult dispatch_mis(const Graph& g, const AlgoConfig& cfg,
                               Cluster& cluster) {
  DispatchMisResult out;
  bool high_degree =
      !lowdeg_feasible(g.max_degree(), g.node_count(), g.edge_count(), cfg);
  if (high_degree) {
    MisResult r = maximal_independent_set(g, cfg, cluster);
    out.mis = std::move(r.mis);
    out.iterations = std::move(r.iterations);
    out.certificates = std::move(r.certificates);
  } else {
    LowdegMisResult r = mis_lowdeg(g, cfg, cluster);
    out.mis = std::move(r.mis);
    out.stages = std::move(r.stages);
    out.used_lowdeg = true;
  }
  return out;
}

DispatchMatchingResult dispatch_matching(const Graph& g, const AlgoConfig& cfg,
                                         Cluster& cluster) {
  DispatchMatchingResult out;
  // low route: Delta <= n^delta, plus the simulated line-graph run (degree
  // at most 2 Delta - 2 on |E| nodes) must itself be feasible
  int64_t line_edges = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    line_edges += g.degree(v) * (g.degree(v) - 1) / 2;
  }
  bool high_degree =
      !lowdeg_feasible(g.max_degree(), g.node_count(), g.edge_count(), cfg) ||
      !lowdeg_feasible(std::max<int64_t>(0, 2 * g.max_degree() - 2),
                       g.edge_count(), line_edges, cfg) ||
      g.edge_count() > cfg.line_graph_cap;
  if (high_degree) {
    MatchingResult r = maximal_matching(g, cfg, cluster);
    out.matching = std::move(r.matching);
    out.iterations = std::move(r.iterations);
    out.certificates = std::move(r.certificates);
  } else {
    // Maximal matching = MIS on the line graph; ball space is accounted per
    // original node so total space stays near-linear.
    Graph line = line_graph_view(g, cfg.line_graph_cap);
    SpaceModel space{&g};
    LowdegMisResult r = mis_lowdeg(line, cfg, cluster, &space);
    for (NodeId e : r.mis) {
      out.matching.push_back(g.edge(static_cast<EdgeId>(e)));
    }
    out.stages = std::move(r.stages);
    out.used_lowdeg = true;
    VerificationReport report = verify_matching(g, out.matching);
    require(report.pass, ErrorCode::InvariantViolated,
            "line-graph matching verification failed: " + report.witness);
  }
  return out;
}

}  // namespace mpcd
