#include "mpcd/intmath.hpp"

#include <numeric>

namespace mpcd {

int64_t pow_ceil(int64_t base, unsigned num, unsigned den) {
  require(base >= 1 && den >= 1, ErrorCode::InvalidParams, "pow_ceil args");
  if (base == 1 || num == 0) return 1;
  Bigint target = bigint_pow(base, num);
  int64_t lo = 1;
  int64_t hi = 2;
  while (bigint_pow(hi, den) < target) {
    lo = hi;
    hi *= 2;
  }
  // invariant: lo^den < target <= hi^den
  while (lo + 1 < hi) {
    int64_t mid = lo + (hi - lo) / 2;
    if (bigint_pow(mid, den) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

int64_t pow_floor(int64_t base, unsigned num, unsigned den) {
  int64_t c = pow_ceil(base, num, den);
  if (bigint_pow(c, den) == bigint_pow(base, num)) return c;
  return c > 1 ? c - 1 : 1;
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1u) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1u;
  }
  return r;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  // deterministic witness set for all 64-bit inputs
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int64_t next_prime(int64_t n) {
  if (n <= 2) return 2;
  int64_t c = n | 1;  // first odd >= n
  while (!is_prime(static_cast<uint64_t>(c))) c += 2;
  return c;
}

int64_t PowerCache::ceil_pow(int64_t base, unsigned num, unsigned den) {
  auto key = std::make_tuple(base, num, den);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  int64_t v = pow_ceil(base, num, den);
  cache_.emplace(key, v);
  return v;
}

int64_t sampling_threshold(int64_t p, int64_t n, int inv_delta) {
  require(p >= 2 && n >= 1 && inv_delta >= 1, ErrorCode::InvalidParams,
          "sampling_threshold args");
  Bigint pk = bigint_pow(Bigint(p), static_cast<unsigned>(inv_delta));
  int64_t lo = 0, hi = p;  // invariant: lo feasible, hi+1 infeasible
  while (lo < hi) {
    int64_t mid = lo + (hi - lo + 1) / 2;
    if (bigint_pow(Bigint(mid), static_cast<unsigned>(inv_delta)) * n <= pk) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

Bigint lcm_upto(int64_t limit) {
  Bigint l = 1;
  for (int64_t i = 2; i <= limit; ++i) {
    Bigint g = boost::multiprecision::gcd(l, Bigint(i));
    l = l / g * i;
  }
  return l;
}

}  // namespace mpcd
