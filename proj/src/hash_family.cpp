#include "mpcd/hash_family.hpp"

#include <algorithm>
#include <sstream>

namespace mpcd {

HashFamily make_hash_family(int k, int64_t domain_size, int64_t range_size,
                            int64_t min_field) {
  require(k >= 1, ErrorCode::InvalidParams, "independence order must be >= 1");
  require(domain_size >= 1 && range_size >= 1, ErrorCode::InvalidParams,
          "domain and range must be nonempty");
  HashFamily f;
  f.k = k;
  f.p = next_prime(std::max({domain_size, range_size, min_field, int64_t{2}}));
  f.domain_size = domain_size;
  f.range_size = range_size;
  return f;
}

int64_t eval_field(const HashFamily& f, const Seed& s, int64_t x) {
  if (x < 0 || x >= f.domain_size) [[unlikely]] {
    fail(ErrorCode::DomainOverflow,
         "point " + std::to_string(x) + " outside domain of size " +
             std::to_string(f.domain_size));
  }
  // Horner from the top coefficient; 128-bit intermediates.
  __int128 acc = 0;
  for (int j = static_cast<int>(s.coef.size()) - 1; j >= 0; --j) {
    acc = (acc * x + s.coef[static_cast<size_t>(j)]) % f.p;
  }
  return static_cast<int64_t>(acc);
}

int64_t eval_range(const HashFamily& f, const Seed& s, int64_t x) {
  __int128 v = eval_field(f, s, x);
  return static_cast<int64_t>(v * f.range_size / f.p);
}

int64_t threshold_value(const HashFamily& f, int64_t num, int64_t den) {
  require(den >= 1 && num >= 0, ErrorCode::InvalidParams,
          "threshold must be a nonnegative rational");
  __int128 t = static_cast<__int128>(f.p) * num / den;
  return static_cast<int64_t>(std::min<__int128>(t, f.p));
}

bool threshold_indicator(const HashFamily& f, const Seed& s, int64_t x,
                         int64_t num, int64_t den) {
  return eval_field(f, s, x) < threshold_value(f, num, den);
}

std::vector<int64_t> joint_output_counts(const HashFamily& f,
                                         const std::vector<int64_t>& points,
                                         int64_t enumeration_cap) {
  require(static_cast<int>(points.size()) <= f.k, ErrorCode::InvalidParams,
          "k-wise uniformity is only claimed for at most k points");
  require(!points.empty(), ErrorCode::InvalidParams, "need at least one point");
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      require(points[i] != points[j], ErrorCode::InvalidParams,
              "points must be distinct");
    }
  }
  require(f.family_size() <= enumeration_cap, ErrorCode::FamilyTooLarge,
          "family of size " + f.family_size().str() + " exceeds cap " +
              std::to_string(enumeration_cap));

  size_t slots = 1;
  for (size_t i = 0; i < points.size(); ++i) slots *= static_cast<size_t>(f.p);
  std::vector<int64_t> counts(slots, 0);

  SeedIter it(f);
  do {
    size_t slot = 0;
    for (int64_t x : points) {
      slot = slot * static_cast<size_t>(f.p) +
             static_cast<size_t>(eval_field(f, it.seed(), x));
    }
    ++counts[slot];
  } while (it.next());
  return counts;
}

std::string seed_to_string(const Seed& s) {
  std::ostringstream out;
  for (size_t i = 0; i < s.coef.size(); ++i) {
    if (i) out << ",";
    out << s.coef[i];
  }
  return out.str();
}

}  // namespace mpcd
