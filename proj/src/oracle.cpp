#include "mpcd/oracle.hpp"

#include <algorithm>
#include <set>

namespace mpcd {

std::vector<NodeId> greedy_mis(const Graph& g) {
  std::vector<NodeId> mis;
  std::vector<char> blocked(static_cast<size_t>(g.node_count()), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (blocked[v]) continue;
    mis.push_back(v);
    for (NodeId u : g.neighbors(v)) blocked[u] = 1;
  }
  return mis;
}

std::vector<Edge> greedy_matching(const Graph& g) {
  std::vector<Edge> matching;
  std::vector<char> used(static_cast<size_t>(g.node_count()), 0);
  for (const Edge& e : g.edges()) {
    if (!used[e.u] && !used[e.v]) {
      matching.push_back(e);
      used[e.u] = used[e.v] = 1;
    }
  }
  return matching;
}

std::vector<Color> greedy_list_coloring(const Graph& g,
                                        const PaletteMap& palettes) {
  std::vector<Color> colors(static_cast<size_t>(g.node_count()), -1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::set<Color> taken;
    for (NodeId u : g.neighbors(v)) {
      if (colors[u] >= 0) taken.insert(colors[u]);
    }
    Palette sorted = palettes[static_cast<size_t>(v)];
    std::sort(sorted.begin(), sorted.end());
    Color pick = -1;
    for (Color c : sorted) {
      if (!taken.count(c)) {
        pick = c;
        break;
      }
    }
    require(pick >= 0, ErrorCode::PaletteTooSmall,
            "greedy coloring stuck at node " + std::to_string(v));
    colors[static_cast<size_t>(v)] = pick;
  }
  return colors;
}

VerificationReport verify_mis(const Graph& g, const std::vector<NodeId>& set) {
  std::vector<char> in(static_cast<size_t>(g.node_count()), 0);
  for (NodeId v : set) {
    if (v < 0 || v >= g.node_count()) {
      return {"mis", false, "node " + std::to_string(v) + " out of range"};
    }
    in[v] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) {
      return {"mis", false,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                  ") inside the set"};
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (in[v]) continue;
    bool dominated = false;
    for (NodeId u : g.neighbors(v)) {
      if (in[u]) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      return {"mis", false, "node " + std::to_string(v) + " addable"};
    }
  }
  return {"mis", true, ""};
}

VerificationReport verify_matching(const Graph& g,
                                   const std::vector<Edge>& matching) {
  std::vector<char> used(static_cast<size_t>(g.node_count()), 0);
  for (const Edge& e : matching) {
    if (!g.has_edge(e.u, e.v)) {
      return {"matching", false,
              "pair (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                  ") is not an edge"};
    }
    if (used[e.u] || used[e.v]) {
      return {"matching", false,
              "node " + std::to_string(used[e.u] ? e.u : e.v) +
                  " matched twice"};
    }
    used[e.u] = used[e.v] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (!used[e.u] && !used[e.v]) {
      return {"matching", false,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                  ") addable"};
    }
  }
  return {"matching", true, ""};
}

VerificationReport verify_coloring(const Graph& g, const PaletteMap& palettes,
                                   const std::vector<Color>& colors) {
  if (colors.size() != static_cast<size_t>(g.node_count())) {
    return {"coloring", false, "color vector has wrong length"};
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Color c = colors[static_cast<size_t>(v)];
    const Palette& pal = palettes[static_cast<size_t>(v)];
    if (std::find(pal.begin(), pal.end(), c) == pal.end()) {
      return {"coloring", false,
              "node " + std::to_string(v) + " uses color " +
                  std::to_string(c) + " outside its palette"};
    }
  }
  for (const Edge& e : g.edges()) {
    if (colors[e.u] == colors[e.v]) {
      return {"coloring", false,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                  ") monochromatic in color " + std::to_string(colors[e.u])};
    }
  }
  return {"coloring", true, ""};
}

Rational enumerate_family_statistics(
    const HashFamily& f, const std::function<bool(const Seed&)>& event,
    int64_t enumeration_cap) {
  require(f.family_size() <= enumeration_cap, ErrorCode::CapExceeded,
          "family of size " + f.family_size().str() +
              " exceeds enumeration cap");
  Bigint hits = 0;
  SeedIter it(f);
  do {
    if (event(it.seed())) ++hits;
  } while (it.next());
  return Rational(hits, f.family_size());
}

std::vector<std::vector<NodeId>> all_maximal_independent_sets(const Graph& g) {
  require(g.node_count() <= 24, ErrorCode::SizeCapExceeded,
          "exhaustive MIS enumeration only for tiny graphs");
  std::vector<std::vector<NodeId>> out;
  uint32_t limit = 1u << g.node_count();
  for (uint32_t mask = 0; mask < limit; ++mask) {
    bool independent = true;
    for (const Edge& e : g.edges()) {
      if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) {
        independent = false;
        break;
      }
    }
    if (!independent) continue;
    bool maximal = true;
    for (NodeId v = 0; v < g.node_count() && maximal; ++v) {
      if (mask >> v & 1u) continue;
      bool dominated = false;
      for (NodeId u : g.neighbors(v)) {
        if (mask >> u & 1u) {
          dominated = true;
          break;
        }
      }
      if (!dominated) maximal = false;
    }
    if (!maximal) continue;
    std::vector<NodeId> set;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (mask >> v & 1u) set.push_back(v);
    }
    out.push_back(std::move(set));
  }
  return out;
}

bool distance2_valid(const Graph& g, const std::vector<Color>& colors) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::set<NodeId> near;
    for (NodeId u : g.neighbors(v)) {
      near.insert(u);
      for (NodeId w : g.neighbors(u)) {
        if (w != v) near.insert(w);
      }
    }
    for (NodeId u : near) {
      if (colors[static_cast<size_t>(u)] == colors[static_cast<size_t>(v)]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<int> simulate_color_phases(
    const Graph& g, const std::vector<Color>& coloring,
    const std::vector<std::vector<int64_t>>& priorities) {
  std::vector<int> status(static_cast<size_t>(g.node_count()), 0);
  for (size_t phase = 0; phase < priorities.size(); ++phase) {
    const auto& pr = priorities[phase];
    auto key = [&](NodeId v) {
      return std::make_pair(pr[static_cast<size_t>(coloring[static_cast<size_t>(v)])],
                            coloring[static_cast<size_t>(v)]);
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
  return status;
}

}  // namespace mpcd
