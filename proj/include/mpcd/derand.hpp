#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpcd/hash_family.hpp"
#include "mpcd/intmath.hpp"
#include "mpcd/mpc.hpp"

namespace mpcd {

// A machine-decomposed objective q(h) = sum_x q_x(h) with integer values.
// Implementations must be re-entrant: total_value may be called concurrently
// with different seeds during candidate scans.
class SeedObjective {
 public:
  virtual ~SeedObjective() = default;

  virtual int64_t machine_count() const = 0;

  // q_x(seed) for one machine.
  virtual int64_t machine_value(int64_t x, const Seed& s) const = 0;

  // sum_x q_x(seed); the default accumulates machine_value in index order,
  // implementations usually share work across machines instead.
  virtual int64_t total_value(const Seed& s) const;

  // Rough cost of one total_value call, in item operations. Drives the
  // exact-vs-surrogate scoring decision.
  virtual int64_t eval_cost_hint() const { return machine_count(); }
};

enum class SeedStrategy { Auto, Exact, GreedyVerified };

struct DerandConfig {
  SeedStrategy strategy = SeedStrategy::Auto;
  // Max completions enumerated per exact conditional evaluation.
  int64_t completion_cap = 1ll << 22;
  // Full exact strategy allowed when p^k * cost_hint stays under this.
  int64_t exact_cost_cap = 1ll << 24;
  // Budget for scoring one chunk (candidates * completions * cost_hint).
  int64_t chunk_cost_cap = 1ll << 24;
};

struct ChunkChoice {
  int chunk;
  int64_t candidate;
  Rational score;       // conditional expectation or pinned value
  std::string method;   // exact | pinned | constant | scan
};

// Outcome of one derandomization step. The defining guarantee is
// achieved >= bound, compared in exact rational arithmetic.
struct ProgressCertificate {
  Seed seed;
  Rational achieved;
  Rational bound;
  std::string strategy;
  std::vector<ChunkChoice> chunks;
  int64_t rounds_charged = 0;
};

// Exact conditional expectation of machine x's objective (x = -1 for the
// whole sum) over uniform completions of the prefix. Throws CapExceeded when
// the completion count exceeds completion_cap.
Rational exact_conditional_expectation(const HashFamily& f,
                                       const SeedObjective& objective,
                                       int64_t machine_index,
                                       const SeedPrefix& prefix,
                                       int64_t completion_cap);

// Method of conditional expectations: fixes the seed chunk by chunk (one
// field coefficient per chunk), keeping the summed conditional expectation
// at least the family average. Candidate ties break toward the smallest
// value. The exact strategy asserts the averaging invariant at every level;
// the greedy strategy verifies the final value and falls back to a
// deterministic exhaustive scan for the first seed meeting the bound.
// supplied_bound must be a valid lower bound on E[q]; it is required
// whenever the family is too large to average exactly.
ProgressCertificate find_seed(const HashFamily& f,
                              const SeedObjective& objective,
                              const DerandConfig& config = {},
                              Cluster* cluster = nullptr,
                              const std::optional<Rational>& supplied_bound =
                                  std::nullopt);

// Greedy + verification entry point (find_seed dispatches here when the
// family is not exactly enumerable under the configured caps).
ProgressCertificate verified_greedy_search(
    const HashFamily& f, const SeedObjective& objective,
    const DerandConfig& config = {}, Cluster* cluster = nullptr,
    const std::optional<Rational>& supplied_bound = std::nullopt);

}  // namespace mpcd
