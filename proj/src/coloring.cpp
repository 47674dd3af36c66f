#include "mpcd/coloring.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mpcd/objectives.hpp"

namespace mpcd {

namespace {

void validate_palettes(const Graph& g, const PaletteMap& palettes) {
  require(palettes.size() == static_cast<size_t>(g.node_count()),
          ErrorCode::InvalidParams, "palette map has wrong length");
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const Palette& pal = palettes[static_cast<size_t>(v)];
    std::set<Color> uniq(pal.begin(), pal.end());
    require(static_cast<int64_t>(uniq.size()) == static_cast<int64_t>(pal.size()),
            ErrorCode::InvalidParams,
            "palette of node " + std::to_string(v) + " repeats a color");
    require(static_cast<int64_t>(pal.size()) >= g.degree(v) + 1,
            ErrorCode::PaletteTooSmall,
            "palette of node " + std::to_string(v) + " smaller than deg+1");
  }
}

int64_t floor_bin(int64_t field_value, int64_t bins, int64_t p) {
  return static_cast<int64_t>(static_cast<__int128>(field_value) * bins / p);
}

// #field values landing in each floor-scaled bin.
std::vector<int64_t> bin_counts(int64_t p, int64_t bins) {
  std::vector<int64_t> cnt(static_cast<size_t>(bins), 0);
  // floor(x * bins / p) = b  <=>  ceil(b p / bins) <= x < ceil((b+1) p / bins)
  for (int64_t b = 0; b < bins; ++b) {
    int64_t lo = (b * p + bins - 1) / bins;
    int64_t hi = ((b + 1) * p + bins - 1) / bins;
    cnt[static_cast<size_t>(b)] = std::min(hi, p) - lo;
  }
  return cnt;
}

// Goodness of node binning (h1): per palette/adjacency slice, the same-bin
// neighbor count and the reserve-bin neighbor count stay under their
// expected value plus a t^0.6 deviation.
class NodeBinObjective : public SeedObjective {
 public:
  struct Machine {
    int64_t begin;
    int64_t end;
    NodeId owner;
    int64_t same_cap;
    int64_t reserve_cap;
  };

  NodeBinObjective(const HashFamily& f, int64_t bins, int64_t reserve,
                   std::vector<int64_t> points, std::vector<Machine> machines)
      : fam_(&f),
        bins_(bins),
        reserve_(reserve),
        points_(std::move(points)),
        machines_(std::move(machines)) {}

  int64_t machine_count() const override {
    return static_cast<int64_t>(machines_.size());
  }

  int64_t machine_value(int64_t x, const Seed& s) const override {
    const Machine& m = machines_[static_cast<size_t>(x)];
    int64_t owner_bin = floor_bin(eval_field(*fam_, s, m.owner), bins_, fam_->p);
    int64_t same = 0;
    int64_t res = 0;
    for (int64_t i = m.begin; i < m.end; ++i) {
      int64_t b =
          floor_bin(eval_field(*fam_, s, points_[static_cast<size_t>(i)]),
                    bins_, fam_->p);
      if (b == owner_bin) ++same;
      if (b >= bins_ - reserve_) ++res;
    }
    return (same <= m.same_cap && res <= m.reserve_cap) ? 1 : 0;
  }

  int64_t eval_cost_hint() const override {
    return static_cast<int64_t>(points_.size()) + machine_count();
  }

  // Chebyshev bound from the exact collision moments of floor-scaled bins:
  // r1 = P[bin(u) = bin(v)], r3 = P[bin(u) = bin(u') = bin(v)] (3-wise).
  Rational expectation_lower_bound() const {
    std::vector<int64_t> cnt = bin_counts(fam_->p, bins_);
    Rational r1, r3;
    for (int64_t c : cnt) {
      r1 += Rational(Bigint(c) * c, Bigint(fam_->p) * fam_->p);
      r3 += Rational(Bigint(c) * c * c,
                     Bigint(fam_->p) * fam_->p * fam_->p);
    }
    int64_t reserve_vals = 0;
    for (int64_t b = bins_ - reserve_; b < bins_; ++b) {
      reserve_vals += cnt[static_cast<size_t>(b)];
    }
    Rational qr(reserve_vals, fam_->p);
    Rational total;
    for (const Machine& m : machines_) {
      int64_t t = m.end - m.begin;
      Rational mean_same = Rational(t) * r1;
      Rational var_same = Rational(t) * r1 * (Rational(1) - r1) +
                          Rational(t) * Rational(t - 1) * (r3 - r1 * r1);
      Rational dev_same = Rational(m.same_cap) - mean_same;
      Rational mean_res = Rational(t) * qr;
      Rational var_res = Rational(t) * qr * (Rational(1) - qr);
      Rational dev_res = Rational(m.reserve_cap) - mean_res;
      if (dev_same.num() <= 0 || dev_res.num() <= 0) continue;
      Rational miss =
          var_same / (dev_same * dev_same) + var_res / (dev_res * dev_res);
      if (miss < Rational(1)) total += Rational(1) - miss;
    }
    return total;
  }

 private:
  const HashFamily* fam_;
  int64_t bins_;
  int64_t reserve_;
  std::vector<int64_t> points_;
  std::vector<Machine> machines_;
};

// Goodness of color binning (h2): per palette slice, enough colors land in
// the owner's (already fixed) bin.
class ColorBinObjective : public SeedObjective {
 public:
  struct Machine {
    int64_t begin;
    int64_t end;
    int64_t owner_bin;
    int64_t floor_need;
  };

  ColorBinObjective(const HashFamily& f, int64_t bins,
                    std::vector<int64_t> points, std::vector<Machine> machines)
      : fam_(&f),
        bins_(bins),
        points_(std::move(points)),
        machines_(std::move(machines)) {}

  int64_t machine_count() const override {
    return static_cast<int64_t>(machines_.size());
  }

  int64_t machine_value(int64_t x, const Seed& s) const override {
    const Machine& m = machines_[static_cast<size_t>(x)];
    int64_t hit = 0;
    for (int64_t i = m.begin; i < m.end; ++i) {
      if (floor_bin(eval_field(*fam_, s, points_[static_cast<size_t>(i)]),
                    bins_, fam_->p) == m.owner_bin) {
        ++hit;
      }
    }
    return hit >= m.floor_need ? 1 : 0;
  }

  int64_t eval_cost_hint() const override {
    return static_cast<int64_t>(points_.size()) + machine_count();
  }

  Rational expectation_lower_bound() const {
    std::vector<int64_t> cnt = bin_counts(fam_->p, bins_);
    Rational total;
    for (const Machine& m : machines_) {
      int64_t t = m.end - m.begin;
      Rational q(cnt[static_cast<size_t>(m.owner_bin)], fam_->p);
      Rational mean = Rational(t) * q;
      Rational var = Rational(t) * q * (Rational(1) - q);
      Rational dev = mean - Rational(m.floor_need);
      if (dev.num() <= 0) continue;
      Rational miss = var / (dev * dev);
      if (miss < Rational(1)) total += Rational(1) - miss;
    }
    return total;
  }

 private:
  const HashFamily* fam_;
  int64_t bins_;
  std::vector<int64_t> points_;
  std::vector<Machine> machines_;
};

struct ColorReduceContext {
  const AlgoConfig* cfg;
  Cluster* cluster;
  ColorReduceParams params;
  ColoringResult* result;
};

std::vector<Color> mis_reduction_color_impl(const Graph& g,
                                            const PaletteMap& palettes,
                                            const AlgoConfig& cfg,
                                            Cluster& cluster,
                                            int64_t low_threshold);

void color_reduce_rec(const Graph& g, const PaletteMap& palettes, int depth,
                      ColorReduceContext& ctx, std::vector<Color>* out);

// Colors a low-degree instance through the MIS reduction and writes the
// result into *out (callers merge subinstance results).
void color_low_degree(const Graph& g, const PaletteMap& palettes,
                      ColorReduceContext& ctx, std::vector<Color>* out) {
  *out = mis_reduction_color_impl(g, palettes, *ctx.cfg, *ctx.cluster,
                                  ctx.params.low_threshold);
}

void color_reduce_rec(const Graph& g, const PaletteMap& palettes, int depth,
                      ColorReduceContext& ctx, std::vector<Color>* out) {
  validate_palettes(g, palettes);
  const AlgoConfig& cfg = *ctx.cfg;
  Cluster& cluster = *ctx.cluster;
  const ColorReduceParams& pr = ctx.params;
  ctx.result->max_depth = std::max(ctx.result->max_depth, depth);
  int depth_cap = (cfg.delta.inv + 1) / 2 + 1;
  require(depth <= depth_cap, ErrorCode::InvariantViolated,
          "ColorReduce recursion exceeded depth " + std::to_string(depth_cap));

  if (g.max_degree() <= pr.low_threshold) {
    color_low_degree(g, palettes, ctx, out);
    return;
  }

  const NodeId n = g.node_count();
  out->assign(static_cast<size_t>(n), -1);

  std::vector<char> in_v0(static_cast<size_t>(n), 0);
  std::vector<NodeId> binned;
  for (NodeId v = 0; v < n; ++v) {
    if (static_cast<int64_t>(palettes[static_cast<size_t>(v)].size()) <=
        pr.low_threshold) {
      in_v0[v] = 1;
    } else {
      binned.push_back(v);
    }
  }

  // Dense color universe for hashing h2.
  std::vector<Color> universe;
  for (const Palette& pal : palettes) {
    universe.insert(universe.end(), pal.begin(), pal.end());
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()),
                 universe.end());
  auto color_index = [&](Color c) {
    return static_cast<int64_t>(
        std::lower_bound(universe.begin(), universe.end(), c) -
        universe.begin());
  };

  // --- h1: bin the non-V0 nodes. ---
  HashFamily fam1;
  fam1.k = cfg.k_concentration;
  fam1.p = cfg.field_prime(std::max<NodeId>(1, n), 1);
  fam1.domain_size = std::max<NodeId>(1, n);
  fam1.range_size = fam1.p;
  require(cfg.k_concentration >= 3, ErrorCode::InvalidParams,
          "node binning needs >= 3-wise independence");
  std::vector<int64_t> points1;
  std::vector<NodeBinObjective::Machine> machines1;
  std::vector<int64_t> slice_sizes;
  for (NodeId v : binned) {
    int64_t begin = static_cast<int64_t>(points1.size());
    for (NodeId u : g.neighbors(v)) {
      if (!in_v0[u]) points1.push_back(u);
    }
    int64_t end = static_cast<int64_t>(points1.size());
    for (int64_t at = begin; at < end; at += pr.slice) {
      int64_t stop = std::min(end, at + pr.slice);
      int64_t t = stop - at;
      int64_t dev = pow06_ceil(t);
      int64_t same_cap = (t + pr.n_bins - 1) / pr.n_bins + dev;
      int64_t reserve_cap = (t * pr.reserve + pr.n_bins - 1) / pr.n_bins + dev;
      machines1.push_back({at, stop, v, same_cap, reserve_cap});
      slice_sizes.push_back(t);
    }
  }
  std::vector<Seed> h1_seed{Seed{std::vector<int64_t>(
      static_cast<size_t>(fam1.k), 0)}};
  if (!machines1.empty()) {
    cluster.distribute_grouped(slice_sizes, std::max<int64_t>(1, pr.slice));
    NodeBinObjective obj1(fam1, pr.n_bins, pr.reserve, std::move(points1),
                          std::move(machines1));
    Rational bound = obj1.expectation_lower_bound();
    ProgressCertificate cert =
        find_seed(fam1, obj1, cfg.derand, &cluster, bound);
    h1_seed[0] = cert.seed;
    ctx.result->certificates.push_back(std::move(cert));
  }
  auto node_bin = [&](NodeId v) {
    return floor_bin(eval_field(fam1, h1_seed[0], v), pr.n_bins, fam1.p);
  };

  const int64_t color_bins = pr.n_bins - pr.reserve;
  std::vector<char> in_v1(static_cast<size_t>(n), 0);
  std::vector<NodeId> v1_nodes;
  std::vector<NodeId> v2_nodes;
  std::vector<int64_t> bin_of(static_cast<size_t>(n), -1);
  for (NodeId v : binned) {
    bin_of[v] = node_bin(v);
    if (bin_of[v] < color_bins) {
      in_v1[v] = 1;
      v1_nodes.push_back(v);
    } else {
      v2_nodes.push_back(v);
    }
  }

  // --- h2: bin the colors; V1 palettes restrict to their node's bin. ---
  HashFamily fam2;
  fam2.k = cfg.k_concentration;
  fam2.p = cfg.field_prime(std::max<int64_t>(1, (int64_t)universe.size()), 1);
  fam2.domain_size = std::max<int64_t>(1, (int64_t)universe.size());
  fam2.range_size = fam2.p;
  std::vector<int64_t> points2;
  std::vector<ColorBinObjective::Machine> machines2;
  std::vector<int64_t> slice_sizes2;
  for (NodeId v : v1_nodes) {
    const Palette& pal = palettes[static_cast<size_t>(v)];
    int64_t begin = static_cast<int64_t>(points2.size());
    for (Color c : pal) points2.push_back(color_index(c));
    int64_t end = static_cast<int64_t>(points2.size());
    for (int64_t at = begin; at < end; at += pr.slice) {
      int64_t stop = std::min(end, at + pr.slice);
      int64_t t = stop - at;
      int64_t dev = pow06_ceil(t);
      int64_t need = std::max<int64_t>(0, t / color_bins - dev);
      machines2.push_back({at, stop, bin_of[v], need});
      slice_sizes2.push_back(t);
    }
  }
  std::vector<Seed> h2_seed{Seed{std::vector<int64_t>(
      static_cast<size_t>(fam2.k), 0)}};
  if (!machines2.empty()) {
    cluster.distribute_grouped(slice_sizes2, std::max<int64_t>(1, pr.slice));
    ColorBinObjective obj2(fam2, color_bins, std::move(points2),
                           std::move(machines2));
    Rational bound = obj2.expectation_lower_bound();
    ProgressCertificate cert =
        find_seed(fam2, obj2, cfg.derand, &cluster, bound);
    h2_seed[0] = cert.seed;
    ctx.result->certificates.push_back(std::move(cert));
  }
  auto color_bin = [&](Color c) {
    return floor_bin(eval_field(fam2, h2_seed[0], color_index(c)), color_bins,
                     fam2.p);
  };

  // Working palettes and same-bin neighbor counts for V1.
  std::vector<Palette> restricted(static_cast<size_t>(n));
  std::vector<int64_t> n1_size(static_cast<size_t>(n), 0);
  for (NodeId v : v1_nodes) {
    for (Color c : palettes[static_cast<size_t>(v)]) {
      if (color_bin(c) == bin_of[v]) restricted[static_cast<size_t>(v)].push_back(c);
    }
    for (NodeId u : g.neighbors(v)) {
      if (in_v1[u] && bin_of[u] == bin_of[v]) ++n1_size[v];
    }
  }

  // PaletteDeficit repair: nodes whose working palette cannot beat their
  // same-bin degree move to V2 (simultaneously; survivors only lose
  // neighbors, so one pass suffices).
  int64_t deficits = 0;
  {
    std::vector<NodeId> keep;
    for (NodeId v : v1_nodes) {
      if (static_cast<int64_t>(restricted[static_cast<size_t>(v)].size()) <=
          n1_size[v]) {
        ++deficits;
        in_v1[v] = 0;
        v2_nodes.push_back(v);
      } else {
        keep.push_back(v);
      }
    }
    v1_nodes = std::move(keep);
    std::sort(v2_nodes.begin(), v2_nodes.end());
  }

  int64_t v0_count = static_cast<int64_t>(n) -
                     static_cast<int64_t>(v1_nodes.size()) -
                     static_cast<int64_t>(v2_nodes.size());
  ctx.result->trace.push_back({depth, v0_count,
                               static_cast<int64_t>(v1_nodes.size()),
                               static_cast<int64_t>(v2_nodes.size()),
                               deficits});

  // --- G1: same-bin subgraph of V1, recursively colored first. ---
  if (!v1_nodes.empty()) {
    std::vector<NodeId> fwd(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < v1_nodes.size(); ++i) {
      fwd[v1_nodes[i]] = static_cast<NodeId>(i);
    }
    std::vector<Edge> sub_edges;
    for (const Edge& e : g.edges()) {
      if (in_v1[e.u] && in_v1[e.v] && bin_of[e.u] == bin_of[e.v]) {
        sub_edges.push_back({fwd[e.u], fwd[e.v]});
      }
    }
    Graph g1 = Graph::from_edges(static_cast<NodeId>(v1_nodes.size()),
                                 std::move(sub_edges));
    PaletteMap pal1(v1_nodes.size());
    for (size_t i = 0; i < v1_nodes.size(); ++i) {
      pal1[i] = restricted[static_cast<size_t>(v1_nodes[i])];
    }
    std::vector<Color> sub_colors;
    color_reduce_rec(g1, pal1, depth + 1, ctx, &sub_colors);
    for (size_t i = 0; i < v1_nodes.size(); ++i) {
      (*out)[static_cast<size_t>(v1_nodes[i])] = sub_colors[i];
    }
  }

  // --- G0 after palette updates, via MIS reduction. ---
  std::vector<NodeId> v0_nodes;
  for (NodeId v = 0; v < n; ++v) {
    if (in_v0[v]) v0_nodes.push_back(v);
  }
  if (!v0_nodes.empty()) {
    PaletteMap updated = update_palettes(palettes, *out, g);
    std::vector<NodeId> back;
    Graph g0 = induced_subgraph(g, v0_nodes, &back);
    PaletteMap pal0(v0_nodes.size());
    for (size_t i = 0; i < v0_nodes.size(); ++i) {
      pal0[i] = updated[static_cast<size_t>(v0_nodes[i])];
    }
    std::vector<Color> sub_colors;
    color_low_degree(g0, pal0, ctx, &sub_colors);
    for (size_t i = 0; i < v0_nodes.size(); ++i) {
      (*out)[static_cast<size_t>(v0_nodes[i])] = sub_colors[i];
    }
  }

  // --- G2 after palette updates, recursively. ---
  if (!v2_nodes.empty()) {
    PaletteMap updated = update_palettes(palettes, *out, g);
    std::vector<NodeId> back;
    Graph g2 = induced_subgraph(g, v2_nodes, &back);
    PaletteMap pal2(v2_nodes.size());
    for (size_t i = 0; i < v2_nodes.size(); ++i) {
      pal2[i] = updated[static_cast<size_t>(v2_nodes[i])];
    }
    std::vector<Color> sub_colors;
    color_reduce_rec(g2, pal2, depth + 1, ctx, &sub_colors);
    for (size_t i = 0; i < v2_nodes.size(); ++i) {
      (*out)[static_cast<size_t>(v2_nodes[i])] = sub_colors[i];
    }
  }
}

}  // namespace

ColorReduceParams resolve_color_reduce_params(NodeId node_count,
                                              const AlgoConfig& cfg) {
  ColorReduceParams pr;
  int64_t n = std::max<NodeId>(2, node_count);
  int k = cfg.delta.inv;
  pr.low_threshold = cfg.low_degree_threshold > 0
                         ? cfg.low_degree_threshold
                         : (k <= 15 ? n : pow_ceil(n, 15, static_cast<unsigned>(k)));
  pr.n_bins = cfg.color_bins > 0
                  ? cfg.color_bins
                  : std::max<int64_t>(
                        2, k <= 3 ? n : pow_ceil(n, 3, static_cast<unsigned>(k)));
  pr.reserve = cfg.reserve_bins > 0
                   ? cfg.reserve_bins
                   : std::max<int64_t>(1, pow_ceil(n, 1, static_cast<unsigned>(k)));
  if (cfg.reserve_bins <= 0 && pr.reserve >= pr.n_bins) {
    pr.reserve = pr.n_bins - 1;
  }
  pr.slice = cfg.palette_slice > 0
                 ? cfg.palette_slice
                 : std::min<int64_t>(std::max<int64_t>(16, pr.low_threshold),
                                     cfg.spec.space_words);
  require(pr.n_bins >= 2 && pr.reserve >= 1 && pr.reserve < pr.n_bins,
          ErrorCode::InvalidParams,
          "ColorReduce needs 1 <= reserve < n_bins and n_bins >= 2");
  require(pr.slice >= 1 && pr.slice <= cfg.spec.space_words,
          ErrorCode::InvalidParams, "palette slice must fit machine space");
  return pr;
}

std::vector<Color> mis_reduction_color(const Graph& g,
                                       const PaletteMap& palettes,
                                       const AlgoConfig& cfg,
                                       Cluster& cluster) {
  ColorReduceParams pr = resolve_color_reduce_params(g.node_count(), cfg);
  return mis_reduction_color_impl(g, palettes, cfg, cluster,
                                  pr.low_threshold);
}

namespace {

std::vector<Color> mis_reduction_color_impl(const Graph& g,
                                            const PaletteMap& palettes,
                                            const AlgoConfig& cfg,
                                            Cluster& cluster,
                                            int64_t low_threshold) {
  validate_palettes(g, palettes);
  require(g.max_degree() <= low_threshold, ErrorCode::DegreeTooHigh,
          "MIS reduction needs max degree <= " +
              std::to_string(low_threshold));

  // Trim to the deg+1 smallest colors: keeps the reduction graph linear in
  // the instance while any returned color still comes from the palette.
  std::vector<Palette> trimmed(palettes.size());
  std::vector<int64_t> base(static_cast<size_t>(g.node_count()) + 1, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Palette pal = palettes[static_cast<size_t>(v)];
    std::sort(pal.begin(), pal.end());
    pal.resize(static_cast<size_t>(g.degree(v) + 1));
    trimmed[static_cast<size_t>(v)] = std::move(pal);
    base[v + 1] = base[v] + static_cast<int64_t>(trimmed[v].size());
  }
  std::vector<Edge> redges;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const Palette& pal = trimmed[static_cast<size_t>(v)];
    for (size_t i = 0; i < pal.size(); ++i) {
      for (size_t j = i + 1; j < pal.size(); ++j) {
        redges.push_back({static_cast<NodeId>(base[v] + static_cast<int64_t>(i)),
                          static_cast<NodeId>(base[v] + static_cast<int64_t>(j))});
      }
    }
  }
  for (const Edge& e : g.edges()) {
    const Palette& pu = trimmed[e.u];
    const Palette& pv = trimmed[e.v];
    size_t i = 0, j = 0;
    while (i < pu.size() && j < pv.size()) {
      if (pu[i] < pv[j]) {
        ++i;
      } else if (pu[i] > pv[j]) {
        ++j;
      } else {
        redges.push_back(
            {static_cast<NodeId>(base[e.u] + static_cast<int64_t>(i)),
             static_cast<NodeId>(base[e.v] + static_cast<int64_t>(j))});
        ++i;
        ++j;
      }
    }
  }
  Graph reduction = Graph::from_edges(static_cast<NodeId>(base.back()),
                                      std::move(redges));
  DispatchMisResult mis = dispatch_mis(reduction, cfg, cluster);

  std::vector<Color> colors(static_cast<size_t>(g.node_count()), -1);
  for (NodeId rn : mis.mis) {
    NodeId v = static_cast<NodeId>(
        std::upper_bound(base.begin(), base.end(), static_cast<int64_t>(rn)) -
        base.begin() - 1);
    require(colors[static_cast<size_t>(v)] < 0, ErrorCode::InvariantViolated,
            "MIS picked two palette entries for node " + std::to_string(v));
    colors[static_cast<size_t>(v)] =
        trimmed[static_cast<size_t>(v)][static_cast<size_t>(
            static_cast<int64_t>(rn) - base[v])];
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    require(colors[static_cast<size_t>(v)] >= 0, ErrorCode::InvariantViolated,
            "MIS left node " + std::to_string(v) + " uncolored");
  }
  VerificationReport report = verify_coloring(g, palettes, colors);
  require(report.pass, ErrorCode::InvariantViolated,
          "MIS-reduction coloring failed verification: " + report.witness);
  return colors;
}

}  // namespace

PaletteMap update_palettes(const PaletteMap& palettes,
                           const std::vector<Color>& partial, const Graph& g) {
  PaletteMap updated(palettes.size());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (partial[static_cast<size_t>(v)] >= 0) {
      updated[static_cast<size_t>(v)] = palettes[static_cast<size_t>(v)];
      continue;
    }
    std::set<Color> taken;
    int64_t uncolored_deg = 0;
    for (NodeId u : g.neighbors(v)) {
      Color c = partial[static_cast<size_t>(u)];
      if (c >= 0) {
        taken.insert(c);
      } else {
        ++uncolored_deg;
      }
    }
    Palette next;
    for (Color c : palettes[static_cast<size_t>(v)]) {
      if (!taken.count(c)) next.push_back(c);
    }
    require(static_cast<int64_t>(next.size()) >= uncolored_deg + 1,
            ErrorCode::InvariantViolated,
            "palette update broke the deg+1 budget at node " +
                std::to_string(v));
    updated[static_cast<size_t>(v)] = std::move(next);
  }
  return updated;
}

ColoringResult color_reduce(const Graph& g, const PaletteMap& palettes,
                            const AlgoConfig& cfg, Cluster& cluster) {
  ColoringResult result;
  ColorReduceContext ctx{&cfg, &cluster,
                         resolve_color_reduce_params(g.node_count(), cfg),
                         &result};
  cluster.load_input(g.node_count() + g.edge_count());
  color_reduce_rec(g, palettes, 0, ctx, &result.colors);
  VerificationReport report = verify_coloring(g, palettes, result.colors);
  require(report.pass, ErrorCode::InvariantViolated,
          "ColorReduce output failed verification: " + report.witness);
  return result;
}

}  // namespace mpcd
