#pragma once

#include <cstdint>
#include <vector>

#include "mpcd/derand.hpp"
#include "mpcd/graph.hpp"
#include "mpcd/hash_family.hpp"
#include "mpcd/intmath.hpp"

namespace mpcd {

// Fixed-point scale for the MIS type-B weighted sums (Z_v surrogates).
inline constexpr int64_t kWeightScale = 1ll << 20;

// Smallest lambda with lambda^2 >= n^(1/(5k)) * t: the n^(0.1 delta) sqrt(t)
// concentration slack with integer-only arithmetic.
int64_t concentration_deviation(int64_t n, int inv_delta, int64_t t);

// Smallest lambda with lambda^5 >= t^3, i.e. ceil(t^0.6).
int64_t pow06_ceil(int64_t t);

// "Count of good machines" objective for the subsampling stages. Machine x
// holds items[begin,end); an item is sampled when eval_field(h, point) < T.
// Machine x is good when lo <= p * (weighted sampled sum) <= hi.
class SubsampleGoodness : public SeedObjective {
 public:
  // Window bounds are pre-scaled by p (good iff lo <= p*sum <= hi);
  // INT64_MIN / INT64_MAX mark one-sided windows. Desk-scale magnitudes
  // (sum <= 2^26 weight units, p < 2^31) keep p*sum inside int64.
  struct Machine {
    int64_t begin;
    int64_t end;
    int64_t lo;
    int64_t hi;
  };

  SubsampleGoodness(const HashFamily& f, int64_t threshold,
                    std::vector<int64_t> points, std::vector<int64_t> weights,
                    std::vector<Machine> machines)
      : fam_(&f),
        threshold_(threshold),
        points_(std::move(points)),
        weights_(std::move(weights)),
        machines_(std::move(machines)) {}

  int64_t machine_count() const override {
    return static_cast<int64_t>(machines_.size());
  }
  int64_t machine_value(int64_t x, const Seed& s) const override;
  int64_t total_value(const Seed& s) const override;
  int64_t eval_cost_hint() const override {
    return static_cast<int64_t>(points_.size()) + machine_count();
  }

  // Exact Chebyshev lower bound on E[#good machines]: the sampling
  // indicators have exact rate T/p and exact pairwise-independent
  // covariances, so Var is computable in closed form for any k >= 2.
  Rational expectation_lower_bound() const;

  // Item membership flags under the chosen seed.
  std::vector<char> sampled_items(const Seed& s) const;

  const std::vector<Machine>& machines() const { return machines_; }
  int64_t threshold() const { return threshold_; }

 private:
  const HashFamily* fam_;
  int64_t threshold_;
  std::vector<int64_t> points_;
  std::vector<int64_t> weights_;  // empty = unit weights
  std::vector<Machine> machines_;
};

// Weighted matched-node objective for the matching selection round:
// q_x(h) = weight(v) * 1{exactly one E*-edge at v is a local minimum}.
// Priorities are (eval_field(h, edge id), edge id), compared
// lexicographically, so priorities are distinct and every nonempty E* yields
// a nonempty candidate matching.
class LocalMinMatchingObjective : public SeedObjective {
 public:
  LocalMinMatchingObjective(const HashFamily& f,
                            std::vector<int64_t> edge_points,
                            std::vector<int64_t> adj_off,
                            std::vector<int32_t> adj,
                            std::vector<int64_t> inc_off,
                            std::vector<int32_t> inc,
                            std::vector<int64_t> machine_weights)
      : fam_(&f),
        edge_points_(std::move(edge_points)),
        adj_off_(std::move(adj_off)),
        adj_(std::move(adj)),
        inc_off_(std::move(inc_off)),
        inc_(std::move(inc)),
        machine_weights_(std::move(machine_weights)) {}

  int64_t machine_count() const override {
    return static_cast<int64_t>(machine_weights_.size());
  }
  int64_t machine_value(int64_t x, const Seed& s) const override;
  int64_t total_value(const Seed& s) const override;
  int64_t eval_cost_hint() const override {
    return static_cast<int64_t>(adj_.size() + edge_points_.size() +
                                inc_.size());
  }

  // Local-minimum flags per E*-edge (the candidate matching E_h).
  std::vector<char> matching_flags(const Seed& s) const;

  // Series lower bound on E[q]: per machine, the disjoint events
  // "edge e at v joins E_h" with P >= (tau/p)(1 - d(e) tau/p).
  Rational expectation_lower_bound(std::vector<Rational>* per_machine) const;

 private:
  std::vector<int64_t> priorities(const Seed& s) const;

  const HashFamily* fam_;
  std::vector<int64_t> edge_points_;  // hash input per E*-edge (global id)
  std::vector<int64_t> adj_off_;      // E*-edge adjacency CSR
  std::vector<int32_t> adj_;
  std::vector<int64_t> inc_off_;      // per machine: incident E*-edges
  std::vector<int32_t> inc_;
  std::vector<int64_t> machine_weights_;
};

// Weighted covered-node objective for the MIS selection round:
// q_x(h) = weight(v) * 1{N_v captures an IS_h node}, IS_h the local minima
// of (eval_field(h, node id), node id) in the J'-induced graph.
class LocalMinISObjective : public SeedObjective {
 public:
  LocalMinISObjective(const HashFamily& f, std::vector<int64_t> node_points,
                      std::vector<int64_t> adj_off, std::vector<int32_t> adj,
                      std::vector<int64_t> nv_off, std::vector<int32_t> nv,
                      std::vector<int64_t> machine_weights)
      : fam_(&f),
        node_points_(std::move(node_points)),
        adj_off_(std::move(adj_off)),
        adj_(std::move(adj)),
        nv_off_(std::move(nv_off)),
        nv_(std::move(nv)),
        machine_weights_(std::move(machine_weights)) {}

  int64_t machine_count() const override {
    return static_cast<int64_t>(machine_weights_.size());
  }
  int64_t machine_value(int64_t x, const Seed& s) const override;
  int64_t total_value(const Seed& s) const override;
  int64_t eval_cost_hint() const override {
    return static_cast<int64_t>(adj_.size() + node_points_.size() +
                                nv_.size());
  }

  std::vector<char> is_flags(const Seed& s) const;

  // Bonferroni lower bound on E[q] over the deterministic subsets N*_v
  // (ascending id, unit-fraction mass in [0.1 delta, 1]).
  Rational expectation_lower_bound(int inv_delta,
                                   std::vector<Rational>* per_machine) const;

 private:
  std::vector<int64_t> priorities(const Seed& s) const;

  const HashFamily* fam_;
  std::vector<int64_t> node_points_;  // hash input per J'-node (global id)
  std::vector<int64_t> adj_off_;      // J'-induced adjacency CSR
  std::vector<int32_t> adj_;
  std::vector<int64_t> nv_off_;       // per machine: N_v as J'-local indices
  std::vector<int32_t> nv_;
  std::vector<int64_t> machine_weights_;
};

}  // namespace mpcd
