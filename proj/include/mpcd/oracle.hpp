#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mpcd/derand.hpp"
#include "mpcd/graph.hpp"

namespace mpcd {

using Color = int32_t;
using Palette = std::vector<Color>;
using PaletteMap = std::vector<Palette>;  // indexed by node id

struct VerificationReport {
  std::string property;
  bool pass;
  std::string witness;  // concrete violating node/edge/color when failing
};

// Canonical sequential baselines, ascending-id order throughout.
std::vector<NodeId> greedy_mis(const Graph& g);
std::vector<Edge> greedy_matching(const Graph& g);
std::vector<Color> greedy_list_coloring(const Graph& g,
                                        const PaletteMap& palettes);

VerificationReport verify_mis(const Graph& g, const std::vector<NodeId>& set);
VerificationReport verify_matching(const Graph& g,
                                   const std::vector<Edge>& matching);
// colors[v] must be a member of palettes[v] and proper across every edge.
VerificationReport verify_coloring(const Graph& g, const PaletteMap& palettes,
                                   const std::vector<Color>& colors);

// Exact probability of `event` over the whole family, by enumeration.
Rational enumerate_family_statistics(const HashFamily& f,
                                     const std::function<bool(const Seed&)>& event,
                                     int64_t enumeration_cap);

// All maximal independent sets of a tiny graph (node_count <= 24).
std::vector<std::vector<NodeId>> all_maximal_independent_sets(const Graph& g);

// Brute-force pairwise check that colors differ within distance <= 2.
bool distance2_valid(const Graph& g, const std::vector<Color>& colors);

// Reference whole-graph simulation of Luby phases under color priorities.
// priorities[i][c] is phase i's hash value for color c; a node joins phase
// i's independent set when its (value, color) pair is lexicographically
// smaller than every current neighbor's. status[v] = +i when v joined at
// phase i, -i when removed as a neighbor at phase i, 0 when it survives all
// phases.
std::vector<int> simulate_color_phases(
    const Graph& g, const std::vector<Color>& coloring,
    const std::vector<std::vector<int64_t>>& priorities);

}  // namespace mpcd
