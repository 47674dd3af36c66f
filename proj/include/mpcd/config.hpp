#pragma once

#include "mpcd/derand.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/mpc.hpp"

namespace mpcd {

// Knobs shared by the matching / MIS / low-degree / coloring pipelines.
struct AlgoConfig {
  Delta delta{8};
  MachineSpec spec{};
  ChargeTable charges{};
  DerandConfig derand{};

  int k_selection = 2;      // pairwise priorities in the selection rounds
  int k_concentration = 4;  // c-wise independence for the subsampling stages
  // Field floor: p = next_prime(max(domain, n * max_degree, field_floor)).
  int64_t field_floor = 1024;

  // Slack factor (1 +- zeta) applied to the stage invariants, zeta = num/den.
  int64_t zeta_num = 1;
  int64_t zeta_den = 2;

  // lowdeg: cap on |H*|^l sequence enumerations per stage.
  int64_t sequence_budget = 1ll << 20;
  // lowdeg: phases beyond l = 1 must keep |H*|^l * (n + m) under this.
  int64_t stage_cost_budget = 1ll << 25;
  // lowdeg: chi uses at most d2_color_cap * Delta^4 colors.
  int64_t d2_color_cap = 16;
  // line_graph_view size cap.
  int64_t line_graph_cap = 1ll << 22;

  // list-coloring: 0 = derive from n and delta (n^{15 delta}, n^{3 delta},
  // n^{delta}); explicit values let desk-scale runs exercise the recursion.
  int64_t low_degree_threshold = 0;
  int64_t color_bins = 0;
  int64_t reserve_bins = 0;
  int64_t palette_slice = 0;

  // Concentration steps pass slack_scale = 1 (the 1/p threshold bias is
  // already tiny); selection steps pass 32 * max degree so the per-node
  // series bounds keep their stated constants.
  int64_t field_prime(int64_t domain, int64_t slack_scale) const {
    return next_prime(std::max({domain, slack_scale, field_floor, int64_t{2}}));
  }
};

}  // namespace mpcd
