#pragma once

#include <cstdint>
#include <vector>

#include "mpcd/errors.hpp"
#include "mpcd/intmath.hpp"

namespace mpcd {

// k-wise independent family: all polynomials of degree < k over GF(p),
// p prime, with outputs optionally floor-scaled down to a smaller range.
// |family| = p^k; a seed is the coefficient vector.
struct HashFamily {
  int64_t p = 2;
  int k = 2;
  int64_t domain_size = 2;
  int64_t range_size = 2;

  Bigint family_size() const { return bigint_pow(Bigint(p), static_cast<unsigned>(k)); }
};

struct Seed {
  std::vector<int64_t> coef;  // coef[j] multiplies x^j; size k

  bool operator==(const Seed&) const = default;
};

struct SeedPrefix {
  std::vector<int64_t> fixed;  // first j coefficients, 0 <= j <= k
};

// p = smallest prime >= max(domain, range, min_field, 2).
HashFamily make_hash_family(int k, int64_t domain_size, int64_t range_size,
                            int64_t min_field = 2);

// Polynomial value in [0, p). Throws DomainOverflow when x >= domain_size.
int64_t eval_field(const HashFamily& f, const Seed& s, int64_t x);

// Field value mapped to [0, range_size) by floor scaling.
int64_t eval_range(const HashFamily& f, const Seed& s, int64_t x);

// floor(p * num / den): the field-level cutoff representing probability
// num/den. Sampling "x with probability num/den" = eval_field < cutoff.
int64_t threshold_value(const HashFamily& f, int64_t num, int64_t den);

bool threshold_indicator(const HashFamily& f, const Seed& s, int64_t x,
                         int64_t num, int64_t den);

// Enumerates all p^k seeds and counts each j-tuple of field outputs at the
// given points. Result has p^j slots indexed by sum_i out_i * p^(j-1-i).
// Exact k-wise uniformity means every slot equals p^(k-j).
// Throws FamilyTooLarge when p^k > enumeration_cap, InvalidParams when
// points exceed k or repeat.
std::vector<int64_t> joint_output_counts(const HashFamily& f,
                                         const std::vector<int64_t>& points,
                                         int64_t enumeration_cap);

// Odometer over seeds: coef[k-1] varies fastest, so seed index
// sum_j coef[j] * p^(k-1-j) increases by one per step.
class SeedIter {
 public:
  explicit SeedIter(const HashFamily& f) : p_(f.p) { seed_.coef.assign(f.k, 0); }
  const Seed& seed() const { return seed_; }
  bool next() {
    for (int j = static_cast<int>(seed_.coef.size()) - 1; j >= 0; --j) {
      if (++seed_.coef[j] < p_) return true;
      seed_.coef[j] = 0;
    }
    return false;
  }

 private:
  int64_t p_;
  Seed seed_;
};

std::string seed_to_string(const Seed& s);

}  // namespace mpcd
