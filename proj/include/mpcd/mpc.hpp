#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mpcd/errors.hpp"
#include "mpcd/graph.hpp"

namespace mpcd {

struct MachineSpec {
  int64_t space_words = 1ll << 26;     // S
  int64_t machine_count = 1ll << 20;   // M
  int word_bits = 64;
};

// Round charges for the modeled communication primitives. Sort and prefix
// sums are O(1)-round black boxes in this model; the constants live here so
// every algorithm is charged identically.
struct ChargeTable {
  int sort_rounds = 1;
  int prefix_rounds = 1;
  int broadcast_rounds = 1;
};

struct RoundLogRow {
  int64_t round;        // round counter after the charge
  std::string primitive;
  int64_t rounds;       // rounds charged by this invocation
  int64_t max_load;     // max words held by any machine during it
  int64_t messages;     // messages exchanged (modeled)
};

// Ball = induced subgraph of all nodes within distance r of the center.
struct Ball {
  NodeId center;
  std::vector<NodeId> nodes;  // sorted, includes center
  std::vector<Edge> edges;    // induced edges, lexicographic
  int64_t words() const {
    return static_cast<int64_t>(nodes.size()) +
           static_cast<int64_t>(edges.size());
  }
};

// Placement of grouped items: machines hold contiguous ranges of the caller's
// (group-sorted) item array.
struct MachineRange {
  int64_t group;
  int64_t begin;
  int64_t end;
  int64_t load() const { return end - begin; }
};

struct Placement {
  std::vector<MachineRange> machines;
  int64_t max_load = 0;
};

// Desk-scale model of the low-space MPC cluster: word budgets, a synchronous
// round counter, and a log of primitive invocations. Every primitive asserts
// that no machine exceeds S words; violations abort via SpaceExceeded.
class Cluster {
 public:
  explicit Cluster(MachineSpec spec, ChargeTable charges = {})
      : spec_(spec), charges_(charges) {}

  const MachineSpec& spec() const { return spec_; }
  const ChargeTable& charges() const { return charges_; }
  int64_t rounds() const { return round_counter_; }
  int64_t high_water() const { return high_water_; }
  const std::vector<RoundLogRow>& round_log() const { return log_; }

  // Asserts the full input fits the cluster (M*S >= words).
  void load_input(int64_t words);

  void charge(const std::string& primitive, int64_t rounds, int64_t max_load,
              int64_t messages);

  // Items with equal group key must occupy a contiguous machine group with
  // exactly chunk_size items per machine except at most one remainder
  // machine per group. group_sizes[i] = number of items with key i.
  Placement distribute_grouped(const std::vector<int64_t>& group_sizes,
                               int64_t chunk_size);

  // Stable global sort of items by key; charged as one sort primitive.
  template <typename T, typename Key>
  Placement global_sort(std::vector<T>& items, Key key) {
    require(static_cast<int64_t>(items.size()) <=
                spec_.machine_count * spec_.space_words,
            ErrorCode::SpaceExceeded, "sort input exceeds M*S");
    std::stable_sort(items.begin(), items.end(),
                     [&key](const T& a, const T& b) { return key(a) < key(b); });
    Placement p;
    int64_t total = static_cast<int64_t>(items.size());
    for (int64_t begin = 0; begin < total; begin += spec_.space_words) {
      int64_t end = std::min(total, begin + spec_.space_words);
      p.machines.push_back({0, begin, end});
      p.max_load = std::max(p.max_load, end - begin);
    }
    charge("sort", charges_.sort_rounds, p.max_load, total);
    return p;
  }

  // Machine m holds x_m; afterwards machine m holds sum_{i<=m} x_i.
  std::vector<int64_t> prefix_sums(const std::vector<int64_t>& values);

  // Exact induced r-hop balls for the given centers. Charges
  // ceil(log2 r) + 1 rounds for the batch; per-ball words must fit S.
  std::vector<Ball> collect_balls(const Graph& g, int r,
                                  const std::vector<NodeId>& centers);

  // CSV rows "round,primitive,rounds,max_load,messages".
  std::string round_log_csv() const;

 private:
  MachineSpec spec_;
  ChargeTable charges_;
  int64_t round_counter_ = 0;
  int64_t high_water_ = 0;
  std::vector<RoundLogRow> log_;
};

// BFS-truncated ball; also the oracle for Cluster::collect_balls.
Ball bfs_ball(const Graph& g, NodeId center, int radius);

}  // namespace mpcd
