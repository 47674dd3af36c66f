#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "mpcd/errors.hpp"

namespace mpcd {

using Bigint = boost::multiprecision::cpp_int;

// Exact rational on arbitrary-precision integers. All certificate arithmetic
// (expectations, bounds, invariant thresholds) goes through this type so that
// every comparison in the library is exact.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(Bigint n) : num_(std::move(n)), den_(1) {}
  Rational(Bigint n, Bigint d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }

  const Bigint& num() const { return num_; }
  const Bigint& den() const { return den_; }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    require(o.num_ != 0, ErrorCode::InvalidParams, "rational division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return num_ * o.den_ < o.num_ * den_;
  }
  bool operator<=(const Rational& o) const {
    return num_ * o.den_ <= o.num_ * den_;
  }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  bool is_zero() const { return num_ == 0; }

  std::string str() const {
    return num_.str() + "/" + den_.str();
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  void normalize() {
    require(den_ != 0, ErrorCode::InvalidParams, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Bigint g = boost::multiprecision::gcd(num_ < 0 ? Bigint(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Bigint num_;
  Bigint den_;
};

inline Bigint bigint_pow(Bigint base, unsigned exp) {
  Bigint r = 1;
  while (exp > 0) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

// Smallest integer t >= 1 with t^den >= base^num, i.e. ceil(base^(num/den))
// computed with integer arithmetic only. base >= 1.
int64_t pow_ceil(int64_t base, unsigned num, unsigned den);

// Largest integer t >= 1 with t^den <= base^num, i.e. floor(base^(num/den)).
int64_t pow_floor(int64_t base, unsigned num, unsigned den);

// Deterministic Miller-Rabin primality for 64-bit values.
bool is_prime(uint64_t n);

// Smallest prime >= n (n >= 2).
int64_t next_prime(int64_t n);

// Threshold caches keyed by (base, num, den); the degree-class machinery
// evaluates the same fractional powers many times per run.
class PowerCache {
 public:
  int64_t ceil_pow(int64_t base, unsigned num, unsigned den);

 private:
  std::map<std::tuple<int64_t, unsigned, unsigned>, int64_t> cache_;
};

// lcm(1..limit) as a big integer; shared denominator for exact sums of unit
// fractions over node degrees.
Bigint lcm_upto(int64_t limit);

// floor(p * n^(-1/k)): the field-level cutoff realizing "sample with
// probability n^(-delta)" exactly up to the 1/p quantization, computed with
// integer arithmetic (largest T with T^k * n <= p^k).
int64_t sampling_threshold(int64_t p, int64_t n, int inv_delta);

}  // namespace mpcd
