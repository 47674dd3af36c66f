#include "mpcd/derand.hpp"

#include <algorithm>
#include <atomic>

#include "mpcd/parallel.hpp"

namespace mpcd {

int64_t SeedObjective::total_value(const Seed& s) const {
  int64_t sum = 0;
  for (int64_t x = 0; x < machine_count(); ++x) sum += machine_value(x, s);
  return sum;
}

namespace {

Bigint completions_of(const HashFamily& f, size_t fixed) {
  return bigint_pow(Bigint(f.p), static_cast<unsigned>(f.k) -
                                     static_cast<unsigned>(fixed));
}

// Sum of objective values over all completions of the prefix. free slots are
// seed coefficients [prefix_len, k).
int64_t completion_sum(const HashFamily& f, const SeedObjective& objective,
                       int64_t machine_index, Seed& scratch,
                       size_t prefix_len) {
  for (size_t i = prefix_len; i < scratch.coef.size(); ++i) scratch.coef[i] = 0;
  int64_t sum = 0;
  while (true) {
    sum += machine_index < 0 ? objective.total_value(scratch)
                             : objective.machine_value(machine_index, scratch);
    // odometer over the free coefficients, last one fastest
    size_t j = scratch.coef.size();
    bool wrapped = true;
    while (j > prefix_len) {
      --j;
      if (++scratch.coef[j] < f.p) {
        wrapped = false;
        break;
      }
      scratch.coef[j] = 0;
    }
    if (wrapped) return sum;
  }
}

void charge_chunk(Cluster* cluster, int64_t candidates_scored) {
  if (!cluster) return;
  cluster->charge("derand_chunk",
                  cluster->charges().prefix_rounds * candidates_scored, 1,
                  candidates_scored);
}

}  // namespace

Rational exact_conditional_expectation(const HashFamily& f,
                                       const SeedObjective& objective,
                                       int64_t machine_index,
                                       const SeedPrefix& prefix,
                                       int64_t completion_cap) {
  require(static_cast<int>(prefix.fixed.size()) <= f.k,
          ErrorCode::InvalidParams, "prefix longer than seed");
  Bigint completions = completions_of(f, prefix.fixed.size());
  require(completions <= completion_cap, ErrorCode::CapExceeded,
          "conditional expectation over " + completions.str() +
              " completions exceeds cap " + std::to_string(completion_cap));
  Seed scratch;
  scratch.coef.assign(static_cast<size_t>(f.k), 0);
  std::copy(prefix.fixed.begin(), prefix.fixed.end(), scratch.coef.begin());
  int64_t sum = completion_sum(f, objective, machine_index, scratch,
                               prefix.fixed.size());
  return Rational(Bigint(sum), completions);
}

namespace {

ProgressCertificate exact_search(const HashFamily& f,
                                 const SeedObjective& objective,
                                 Cluster* cluster) {
  ProgressCertificate cert;
  cert.strategy = "exact";
  Seed chosen;
  chosen.coef.assign(static_cast<size_t>(f.k), 0);

  // level_sum = sum of q over all completions of the current prefix.
  int64_t level_sum = 0;
  bool have_level_sum = false;

  for (int j = 0; j < f.k; ++j) {
    Bigint completions = completions_of(f, static_cast<size_t>(j) + 1);
    std::vector<int64_t> sums(static_cast<size_t>(f.p), 0);
    parallel_for(f.p, [&](int64_t c) {
      Seed scratch = chosen;
      scratch.coef[static_cast<size_t>(j)] = c;
      sums[static_cast<size_t>(c)] = completion_sum(
          f, objective, -1, scratch, static_cast<size_t>(j) + 1);
    });
    charge_chunk(cluster, f.p);

    int64_t chunk_total = 0;
    int64_t best = 0;
    for (int64_t c = 0; c < f.p; ++c) {
      chunk_total += sums[static_cast<size_t>(c)];
      if (sums[static_cast<size_t>(c)] > sums[static_cast<size_t>(best)]) {
        best = c;
      }
    }
    // Averaging invariant: extensions of the prefix partition its
    // completion set, so chunk totals must match the parent level exactly.
    if (have_level_sum) {
      require(chunk_total == level_sum, ErrorCode::EvaluatorInconsistent,
              "averaging invariant broken at chunk " + std::to_string(j));
    } else {
      cert.bound = Rational(Bigint(chunk_total), completions_of(f, 0));
    }
    chosen.coef[static_cast<size_t>(j)] = best;
    level_sum = sums[static_cast<size_t>(best)];
    have_level_sum = true;
    cert.chunks.push_back(
        {j, best, Rational(Bigint(level_sum), completions), "exact"});
  }

  int64_t final_value = objective.total_value(chosen);
  require(final_value == level_sum, ErrorCode::EvaluatorInconsistent,
          "final objective value disagrees with the last conditional");
  cert.seed = chosen;
  cert.achieved = Rational(final_value);
  require(cert.achieved >= cert.bound, ErrorCode::EvaluatorInconsistent,
          "exact search ended below the family average");
  return cert;
}

}  // namespace

ProgressCertificate verified_greedy_search(
    const HashFamily& f, const SeedObjective& objective,
    const DerandConfig& config, Cluster* cluster,
    const std::optional<Rational>& supplied_bound) {
  ProgressCertificate cert;
  cert.strategy = "greedy";
  const int64_t hint = std::max<int64_t>(1, objective.eval_cost_hint());

  if (supplied_bound.has_value()) {
    cert.bound = *supplied_bound;
  } else {
    Bigint family = f.family_size();
    require(family <= config.completion_cap &&
                family * hint <= config.exact_cost_cap,
            ErrorCode::InvalidParams,
            "greedy search over a non-enumerable family needs a supplied "
            "bound");
    SeedPrefix empty;
    cert.bound = exact_conditional_expectation(f, objective, -1, empty,
                                               config.completion_cap);
  }

  Seed seed;
  seed.coef.assign(static_cast<size_t>(f.k), 0);

  for (int j = 0; j < f.k; ++j) {
    Bigint free_count = completions_of(f, static_cast<size_t>(j) + 1);
    Bigint exact_cost = Bigint(f.p) * free_count * hint;
    Bigint pinned_cost = Bigint(f.p) * hint;

    std::string method;
    int64_t stride = 1;
    std::vector<int64_t> sums(static_cast<size_t>(f.p), INT64_MIN);
    Bigint score_den = 1;
    if (free_count <= config.completion_cap &&
        exact_cost <= config.chunk_cost_cap) {
      method = "exact";
      score_den = free_count;
      parallel_for(f.p, [&](int64_t c) {
        Seed scratch = seed;
        scratch.coef[static_cast<size_t>(j)] = c;
        sums[static_cast<size_t>(c)] = completion_sum(
            f, objective, -1, scratch, static_cast<size_t>(j) + 1);
      });
      charge_chunk(cluster, f.p);
    } else {
      // Surrogate: evaluate candidates with all later coefficients pinned at
      // their current values. When even that exceeds the budget, score a
      // deterministic arithmetic progression of candidates; the final
      // verification below keeps either variant honest.
      method = "pinned";
      Bigint over = (pinned_cost + config.chunk_cost_cap - 1) /
                    config.chunk_cost_cap;
      stride = over > f.p ? f.p : static_cast<int64_t>(over);
      int64_t scanned = (f.p + stride - 1) / stride;
      parallel_for(scanned, [&](int64_t idx) {
        int64_t c = idx * stride;
        Seed scratch = seed;
        scratch.coef[static_cast<size_t>(j)] = c;
        sums[static_cast<size_t>(c)] = objective.total_value(scratch);
      });
      charge_chunk(cluster, scanned);
    }

    int64_t best = 0;
    for (int64_t c = 0; c < f.p; c += (method == "exact" ? 1 : stride)) {
      if (sums[static_cast<size_t>(c)] > sums[static_cast<size_t>(best)]) {
        best = c;
      }
    }
    seed.coef[static_cast<size_t>(j)] = best;
    cert.chunks.push_back(
        {j, best, Rational(Bigint(sums[static_cast<size_t>(best)]), score_den),
         method});
  }

  cert.seed = seed;
  cert.achieved = Rational(objective.total_value(seed));
  if (cert.achieved >= cert.bound) return cert;

  // Deterministic fallback: scan seeds in index order (last coefficient
  // fastest) and return the first one meeting the bound.
  cert.strategy = "greedy+scan";
  Bigint family = f.family_size();
  const int64_t block = 4096;
  SeedIter it(f);
  Bigint scanned = 0;
  bool more = true;
  while (more) {
    std::vector<Seed> batch;
    batch.reserve(static_cast<size_t>(block));
    for (int64_t i = 0; i < block; ++i) {
      batch.push_back(it.seed());
      if (!it.next()) {
        more = false;
        break;
      }
    }
    std::vector<int64_t> values(batch.size());
    parallel_for(static_cast<int64_t>(batch.size()), [&](int64_t i) {
      values[static_cast<size_t>(i)] = objective.total_value(batch[static_cast<size_t>(i)]);
    });
    charge_chunk(cluster, static_cast<int64_t>(batch.size()));
    for (size_t i = 0; i < batch.size(); ++i) {
      if (Rational(values[i]) >= cert.bound) {
        cert.seed = batch[i];
        cert.achieved = Rational(values[i]);
        cert.chunks.push_back({f.k, 0, cert.achieved, "scan"});
        return cert;
      }
    }
    scanned += static_cast<int64_t>(batch.size());
    if (scanned >= family) break;
  }
  fail(ErrorCode::NoSeedMeetsBound,
       "no seed in the family reaches the requested bound " +
           cert.bound.str());
}

ProgressCertificate find_seed(const HashFamily& f,
                              const SeedObjective& objective,
                              const DerandConfig& config, Cluster* cluster,
                              const std::optional<Rational>& supplied_bound) {
  SeedStrategy strategy = config.strategy;
  if (strategy == SeedStrategy::Auto) {
    Bigint family = f.family_size();
    Bigint cost = family * std::max<int64_t>(1, objective.eval_cost_hint());
    strategy = (family <= config.completion_cap &&
                cost <= config.exact_cost_cap)
                   ? SeedStrategy::Exact
                   : SeedStrategy::GreedyVerified;
  }
  if (strategy == SeedStrategy::Exact) {
    ProgressCertificate cert = exact_search(f, objective, cluster);
    if (supplied_bound.has_value()) {
      // The exact family average can only strengthen a module-supplied bound.
      require(cert.bound >= *supplied_bound, ErrorCode::EvaluatorInconsistent,
              "family average fell below the module bound");
    }
    return cert;
  }
  return verified_greedy_search(f, objective, config, cluster, supplied_bound);
}

}  // namespace mpcd
