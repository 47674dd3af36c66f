#include "mpcd/generators.hpp"

#include <algorithm>
#include <set>

namespace mpcd {

namespace {

Graph gen_gnp(const GenSpec& spec) {
  require(spec.prob_den >= 1 && spec.prob_num >= 0 &&
              spec.prob_num <= spec.prob_den,
          ErrorCode::InvalidParams, "gnp probability must be in [0,1]");
  SplitMix64 rng(spec.seed);
  // keep a pair iff r < floor(num * 2^64 / den)
  unsigned __int128 threshold =
      (static_cast<unsigned __int128>(spec.prob_num) << 64) /
      static_cast<unsigned __int128>(spec.prob_den);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < spec.n; ++u) {
    for (NodeId v = u + 1; v < spec.n; ++v) {
      if (static_cast<unsigned __int128>(rng.next()) < threshold) {
        edges.push_back({u, v});
      }
    }
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph gen_random_regular(const GenSpec& spec) {
  int64_t d = spec.param_a;
  require(d >= 1 && d < spec.n && (static_cast<int64_t>(spec.n) * d) % 2 == 0,
          ErrorCode::InvalidParams, "random_regular needs 1 <= d < n, nd even");
  SplitMix64 rng(spec.seed);
  int64_t points = static_cast<int64_t>(spec.n) * d;
  std::vector<NodeId> stub(static_cast<size_t>(points));
  for (int64_t i = 0; i < points; ++i) {
    stub[static_cast<size_t>(i)] = static_cast<NodeId>(i / d);
  }
  for (int attempt = 0; attempt < 20000; ++attempt) {
    for (int64_t i = points - 1; i > 0; --i) {
      int64_t j = static_cast<int64_t>(rng.below(static_cast<uint64_t>(i + 1)));
      std::swap(stub[static_cast<size_t>(i)], stub[static_cast<size_t>(j)]);
    }
    std::set<std::pair<NodeId, NodeId>> seen;
    bool ok = true;
    for (int64_t i = 0; i < points && ok; i += 2) {
      NodeId a = stub[static_cast<size_t>(i)];
      NodeId b = stub[static_cast<size_t>(i + 1)];
      if (a == b) ok = false;
      if (ok && !seen.insert({std::min(a, b), std::max(a, b)}).second) {
        ok = false;
      }
    }
    if (!ok) continue;
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(points / 2));
    for (const auto& [a, b] : seen) edges.push_back({a, b});
    return Graph::from_edges(spec.n, std::move(edges));
  }
  fail(ErrorCode::InvalidParams,
       "pairing model failed to produce a simple regular graph");
}

Graph gen_grid(const GenSpec& spec) {
  int64_t rows = spec.param_a;
  int64_t cols = spec.param_b;
  require(rows >= 1 && cols >= 1 && rows * cols == spec.n,
          ErrorCode::InvalidParams, "grid needs rows*cols == n");
  std::vector<Edge> edges;
  auto id = [&](int64_t r, int64_t c) {
    return static_cast<NodeId>(r * cols + c);
  };
  for (int64_t r = 0; r < rows; ++r) {
    for (int64_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph gen_tree(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < spec.n; ++v) {
    NodeId parent = static_cast<NodeId>(rng.below(static_cast<uint64_t>(v)));
    edges.push_back({parent, v});
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph gen_star(const GenSpec& spec) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < spec.n; ++v) edges.push_back({0, v});
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph gen_clique(const GenSpec& spec) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < spec.n; ++u) {
    for (NodeId v = u + 1; v < spec.n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph gen_disjoint_edges(const GenSpec& spec) {
  require(spec.n % 2 == 0, ErrorCode::InvalidParams,
          "disjoint_edges needs an even node count");
  std::vector<Edge> edges;
  for (NodeId v = 0; v < spec.n; v += 2) edges.push_back({v, v + 1});
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph gen_blowup(const GenSpec& spec) {
  int64_t base = spec.param_a;
  int64_t group = spec.param_b;
  require(base >= 3 && group >= 1 && base * group == spec.n,
          ErrorCode::InvalidParams, "blowup needs base*group == n, base >= 3");
  // cycle of `base` groups, complete bipartite between adjacent groups
  std::vector<Edge> edges;
  for (int64_t b = 0; b < base; ++b) {
    int64_t nb = (b + 1) % base;
    for (int64_t i = 0; i < group; ++i) {
      for (int64_t j = 0; j < group; ++j) {
        NodeId u = static_cast<NodeId>(b * group + i);
        NodeId v = static_cast<NodeId>(nb * group + j);
        edges.push_back({std::min(u, v), std::max(u, v)});
      }
    }
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

}  // namespace

Graph generate_graph(const GenSpec& spec) {
  require(spec.n >= 0, ErrorCode::InvalidParams, "negative node count");
  if (spec.kind == "gnp") return gen_gnp(spec);
  if (spec.kind == "random_regular") return gen_random_regular(spec);
  if (spec.kind == "grid") return gen_grid(spec);
  if (spec.kind == "tree") return gen_tree(spec);
  if (spec.kind == "star") return gen_star(spec);
  if (spec.kind == "clique") return gen_clique(spec);
  if (spec.kind == "disjoint_edges") return gen_disjoint_edges(spec);
  if (spec.kind == "blowup") return gen_blowup(spec);
  fail(ErrorCode::InvalidParams, "unknown graph kind '" + spec.kind + "'");
}

PaletteMap generate_palettes(const Graph& g, const std::string& kind,
                             int64_t universe, uint64_t seed) {
  PaletteMap palettes(static_cast<size_t>(g.node_count()));
  if (kind == "shared") {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (int64_t c = 0; c <= g.degree(v); ++c) {
        palettes[static_cast<size_t>(v)].push_back(static_cast<Color>(c));
      }
    }
    return palettes;
  }
  if (kind == "banded") {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (int64_t c = 0; c <= g.degree(v); ++c) {
        palettes[static_cast<size_t>(v)].push_back(
            static_cast<Color>(v + c));
      }
    }
    return palettes;
  }
  if (kind == "random") {
    int64_t need = g.max_degree() + 1;
    int64_t size = std::max(universe, 2 * need);
    SplitMix64 rng(seed);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      std::set<Color> pal;
      while (static_cast<int64_t>(pal.size()) < g.degree(v) + 1) {
        pal.insert(static_cast<Color>(rng.below(static_cast<uint64_t>(size))));
      }
      palettes[static_cast<size_t>(v)].assign(pal.begin(), pal.end());
    }
    return palettes;
  }
  fail(ErrorCode::InvalidParams, "unknown palette kind '" + kind + "'");
}

}  // namespace mpcd
