#include "mpcd/objectives.hpp"

#include <algorithm>
#include <map>

namespace mpcd {

int64_t concentration_deviation(int64_t n, int inv_delta, int64_t t) {
  if (t <= 0) return 1;
  // lambda^2 >= n^(0.2/k) * t, integerized as lambda^(10k) >= n * t^(5k)
  unsigned tenk = 10u * static_cast<unsigned>(inv_delta);
  Bigint target = Bigint(n) *
                  bigint_pow(Bigint(t), 5u * static_cast<unsigned>(inv_delta));
  int64_t lo = 1, hi = 2;
  while (bigint_pow(Bigint(hi), tenk) < target) {
    lo = hi;
    hi *= 2;
  }
  while (lo + 1 < hi) {
    int64_t mid = lo + (hi - lo) / 2;
    if (bigint_pow(Bigint(mid), tenk) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return bigint_pow(Bigint(lo), tenk) >= target ? lo : hi;
}

int64_t pow06_ceil(int64_t t) {
  if (t <= 1) return 1;
  Bigint target = bigint_pow(Bigint(t), 3);
  int64_t lo = 1, hi = 2;
  while (bigint_pow(Bigint(hi), 5) < target) {
    lo = hi;
    hi *= 2;
  }
  while (lo + 1 < hi) {
    int64_t mid = lo + (hi - lo) / 2;
    if (bigint_pow(Bigint(mid), 5) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

int64_t SubsampleGoodness::machine_value(int64_t x, const Seed& s) const {
  const Machine& m = machines_[static_cast<size_t>(x)];
  int64_t sum = 0;
  for (int64_t i = m.begin; i < m.end; ++i) {
    if (eval_field(*fam_, s, points_[static_cast<size_t>(i)]) < threshold_) {
      sum += weights_.empty() ? 1 : weights_[static_cast<size_t>(i)];
    }
  }
  int64_t scaled = sum * fam_->p;
  return (m.lo <= scaled && scaled <= m.hi) ? 1 : 0;
}

int64_t SubsampleGoodness::total_value(const Seed& s) const {
  int64_t good = 0;
  for (size_t x = 0; x < machines_.size(); ++x) {
    good += machine_value(static_cast<int64_t>(x), s);
  }
  return good;
}

std::vector<char> SubsampleGoodness::sampled_items(const Seed& s) const {
  std::vector<char> flags(points_.size(), 0);
  for (size_t i = 0; i < points_.size(); ++i) {
    flags[i] = eval_field(*fam_, s, points_[i]) < threshold_ ? 1 : 0;
  }
  return flags;
}

Rational SubsampleGoodness::expectation_lower_bound() const {
  Rational q(threshold_, fam_->p);
  Rational one_minus_q = Rational(1) - q;
  Rational total;
  for (const Machine& m : machines_) {
    // Var[S] = q(1-q) * sum w^2 exactly under pairwise independence.
    Bigint w2 = 0;
    Bigint wsum = 0;
    for (int64_t i = m.begin; i < m.end; ++i) {
      int64_t w = weights_.empty() ? 1 : weights_[static_cast<size_t>(i)];
      w2 += Bigint(w) * w;
      wsum += w;
    }
    Rational variance = q * one_minus_q * Rational(w2);
    Rational mean = q * Rational(wsum);
    // Distance from the mean to the nearer window edge, in weight units.
    // Windows are stored scaled by p: value*p in [lo, hi].
    Rational dist;
    bool have = false;
    if (m.lo != INT64_MIN) {
      Rational d = mean - Rational(m.lo, fam_->p);
      if (d.num() < 0) continue;  // mean outside window: no contribution
      dist = d;
      have = true;
    }
    if (m.hi != INT64_MAX) {
      Rational d = Rational(m.hi, fam_->p) - mean;
      if (d.num() < 0) continue;
      if (!have || d < dist) dist = d;
      have = true;
    }
    if (!have) {
      total += Rational(1);
      continue;
    }
    if (dist.is_zero()) continue;
    Rational miss = variance / (dist * dist);
    if (miss < Rational(1)) total += Rational(1) - miss;
  }
  return total;
}

std::vector<int64_t> LocalMinMatchingObjective::priorities(
    const Seed& s) const {
  std::vector<int64_t> z(edge_points_.size());
  for (size_t i = 0; i < edge_points_.size(); ++i) {
    z[i] = eval_field(*fam_, s, edge_points_[i]);
  }
  return z;
}

namespace {

// strict lexicographic (hash value, identity) order
inline bool beats(int64_t za, int64_t ida, int64_t zb, int64_t idb) {
  return za != zb ? za < zb : ida < idb;
}

}  // namespace

std::vector<char> LocalMinMatchingObjective::matching_flags(
    const Seed& s) const {
  std::vector<int64_t> z = priorities(s);
  std::vector<char> in(edge_points_.size(), 1);
  for (size_t e = 0; e < edge_points_.size(); ++e) {
    for (int64_t a = adj_off_[e]; a < adj_off_[e + 1]; ++a) {
      size_t o = static_cast<size_t>(adj_[static_cast<size_t>(a)]);
      if (!beats(z[e], edge_points_[e], z[o], edge_points_[o])) {
        in[e] = 0;
        break;
      }
    }
  }
  return in;
}

int64_t LocalMinMatchingObjective::total_value(const Seed& s) const {
  std::vector<char> in = matching_flags(s);
  int64_t sum = 0;
  for (size_t x = 0; x < machine_weights_.size(); ++x) {
    int matched = 0;
    for (int64_t i = inc_off_[x]; i < inc_off_[x + 1] && matched <= 1; ++i) {
      matched += in[static_cast<size_t>(inc_[static_cast<size_t>(i)])];
    }
    if (matched == 1) sum += machine_weights_[x];
  }
  return sum;
}

int64_t LocalMinMatchingObjective::machine_value(int64_t x,
                                                 const Seed& s) const {
  std::vector<char> in = matching_flags(s);
  int matched = 0;
  for (int64_t i = inc_off_[static_cast<size_t>(x)];
       i < inc_off_[static_cast<size_t>(x) + 1]; ++i) {
    matched += in[static_cast<size_t>(inc_[static_cast<size_t>(i)])];
  }
  return matched == 1 ? machine_weights_[static_cast<size_t>(x)] : 0;
}

Rational LocalMinMatchingObjective::expectation_lower_bound(
    std::vector<Rational>* per_machine) const {
  Rational total;
  if (per_machine) per_machine->assign(machine_weights_.size(), Rational());
  for (size_t x = 0; x < machine_weights_.size(); ++x) {
    Rational prob;
    bool certain = false;
    for (int64_t i = inc_off_[x]; i < inc_off_[x + 1]; ++i) {
      size_t e = static_cast<size_t>(inc_[static_cast<size_t>(i)]);
      int64_t deg = adj_off_[e + 1] - adj_off_[e];
      if (deg == 0) {
        certain = true;  // an isolated E*-edge always joins; v gets matched
        break;
      }
      int64_t tau = std::max<int64_t>(1, fam_->p / (2 * deg));
      Rational hit(tau, fam_->p);
      Rational term = hit * (Rational(1) - Rational(deg) * hit);
      if (term.num() > 0) prob += term;
    }
    if (certain) prob = Rational(1);
    if (prob > Rational(1)) prob = Rational(1);
    Rational contribution = Rational(machine_weights_[x]) * prob;
    if (per_machine) (*per_machine)[x] = contribution;
    total += contribution;
  }
  return total;
}

std::vector<int64_t> LocalMinISObjective::priorities(const Seed& s) const {
  std::vector<int64_t> z(node_points_.size());
  for (size_t i = 0; i < node_points_.size(); ++i) {
    z[i] = eval_field(*fam_, s, node_points_[i]);
  }
  return z;
}

std::vector<char> LocalMinISObjective::is_flags(const Seed& s) const {
  std::vector<int64_t> z = priorities(s);
  std::vector<char> in(node_points_.size(), 1);
  for (size_t u = 0; u < node_points_.size(); ++u) {
    for (int64_t a = adj_off_[u]; a < adj_off_[u + 1]; ++a) {
      size_t o = static_cast<size_t>(adj_[static_cast<size_t>(a)]);
      if (!beats(z[u], node_points_[u], z[o], node_points_[o])) {
        in[u] = 0;
        break;
      }
    }
  }
  return in;
}

int64_t LocalMinISObjective::total_value(const Seed& s) const {
  std::vector<char> in = is_flags(s);
  int64_t sum = 0;
  for (size_t x = 0; x < machine_weights_.size(); ++x) {
    for (int64_t i = nv_off_[x]; i < nv_off_[x + 1]; ++i) {
      if (in[static_cast<size_t>(nv_[static_cast<size_t>(i)])]) {
        sum += machine_weights_[x];
        break;
      }
    }
  }
  return sum;
}

int64_t LocalMinISObjective::machine_value(int64_t x, const Seed& s) const {
  std::vector<char> in = is_flags(s);
  for (int64_t i = nv_off_[static_cast<size_t>(x)];
       i < nv_off_[static_cast<size_t>(x) + 1]; ++i) {
    if (in[static_cast<size_t>(nv_[static_cast<size_t>(i)])]) {
      return machine_weights_[static_cast<size_t>(x)];
    }
  }
  return 0;
}

Rational LocalMinISObjective::expectation_lower_bound(
    int inv_delta, std::vector<Rational>* per_machine) const {
  Rational total;
  if (per_machine) per_machine->assign(machine_weights_.size(), Rational());
  Rational tenth_delta(1, 10ll * inv_delta);
  for (size_t x = 0; x < machine_weights_.size(); ++x) {
    // Degree-0 member of N_v joins IS_h unconditionally.
    bool certain = false;
    for (int64_t i = nv_off_[x]; i < nv_off_[x + 1] && !certain; ++i) {
      size_t u = static_cast<size_t>(nv_[static_cast<size_t>(i)]);
      certain = adj_off_[u + 1] == adj_off_[u];
    }
    Rational prob;
    if (certain) {
      prob = Rational(1);
    } else {
      // N*_v: a single member with 1/deg >= 0.1 delta when one exists,
      // otherwise ascending-id accumulation until the mass reaches 0.1 delta.
      std::vector<size_t> star;
      Rational mass;
      int64_t single = -1;
      for (int64_t i = nv_off_[x]; i < nv_off_[x + 1]; ++i) {
        size_t u = static_cast<size_t>(nv_[static_cast<size_t>(i)]);
        int64_t deg = adj_off_[u + 1] - adj_off_[u];
        if (Rational(1, deg) >= tenth_delta) {
          single = static_cast<int64_t>(u);
          break;
        }
      }
      if (single >= 0) {
        star.push_back(static_cast<size_t>(single));
      } else {
        for (int64_t i = nv_off_[x]; i < nv_off_[x + 1] && mass < tenth_delta;
             ++i) {
          size_t u = static_cast<size_t>(nv_[static_cast<size_t>(i)]);
          int64_t deg = adj_off_[u + 1] - adj_off_[u];
          star.push_back(u);
          mass += Rational(1, deg);
        }
      }
      // Bonferroni: P[union A_u] >= sum P[A_u] - sum_{u<u'} P[A_u and A_u'].
      Rational singles;
      std::vector<Rational> hit;
      for (size_t u : star) {
        int64_t deg = adj_off_[u + 1] - adj_off_[u];
        int64_t tau = std::max<int64_t>(1, fam_->p / (3 * deg));
        Rational h(tau, fam_->p);
        hit.push_back(h);
        Rational term = h * (Rational(1) - Rational(deg) * h);
        if (term.num() > 0) singles += term;
      }
      Rational pairs;
      for (size_t a = 0; a < hit.size(); ++a) {
        for (size_t b = a + 1; b < hit.size(); ++b) {
          pairs += hit[a] * hit[b];
        }
      }
      prob = singles - pairs;
      if (prob.num() < 0) prob = Rational();
      if (prob > Rational(1)) prob = Rational(1);
    }
    Rational contribution = Rational(machine_weights_[x]) * prob;
    if (per_machine) (*per_machine)[x] = contribution;
    total += contribution;
  }
  return total;
}

}  // namespace mpcd
