#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpcd/hash_family.hpp"

using namespace mpcd;

TEST_CASE("polynomial evaluation") {
  HashFamily f = make_hash_family(2, 7, 7);
  CHECK(f.p == 7);
  SUBCASE("zero polynomial") {
    Seed zero{{0, 0}};
    for (int64_t x = 0; x < 7; ++x) CHECK(eval_field(f, zero, x) == 0);
  }
  SUBCASE("constant polynomial (k=1)") {
    HashFamily c = make_hash_family(1, 7, 7);
    Seed s{{5}};
    for (int64_t x = 0; x < 7; ++x) CHECK(eval_field(c, s, x) == 5);
  }
  SUBCASE("hand arithmetic cross-check") {
    Seed s{{1, 2}};
    CHECK(eval_field(f, s, 3) == 0);  // (1 + 2*3) mod 7
    CHECK(eval_field(f, s, 1) == 3);
    CHECK(eval_field(f, s, 6) == 6);  // 13 mod 7
  }
  SUBCASE("domain is enforced") {
    Seed s{{1, 2}};
    CHECK_THROWS_WITH_AS(eval_field(f, s, 7),
                         doctest::Contains("DomainOverflow"), Error);
  }
  SUBCASE("purity") {
    Seed s{{4, 3}};
    CHECK(eval_field(f, s, 5) == eval_field(f, s, 5));
  }
}

TEST_CASE("threshold indicator semantics") {
  HashFamily f = make_hash_family(2, 101, 101);
  REQUIRE(f.p == 101);
  Seed s{{13, 57}};
  SUBCASE("probability one and zero") {
    for (int64_t x = 0; x < 10; ++x) {
      CHECK(threshold_indicator(f, s, x, 1, 1));
      CHECK(!threshold_indicator(f, s, x, 0, 1));
    }
  }
  SUBCASE("cutoff 1/101 selects exactly the zero output") {
    // threshold floor(101/101) = 1, so indicator <=> eval == 0; over the
    // whole family a fixed point maps below it exactly p^{k-1} times.
    int64_t hits = 0;
    SeedIter it(f);
    do {
      if (threshold_indicator(f, it.seed(), 42, 1, 101)) {
        CHECK(eval_field(f, it.seed(), 42) == 0);
        ++hits;
      }
    } while (it.next());
    CHECK(hits == 101);  // p^{k-1}
  }
  SUBCASE("floor scaling bias stays below 1/p") {
    for (int64_t num : {1, 3, 50}) {
      for (int64_t den : {7, 101, 1000}) {
        if (num > den) continue;
        int64_t t = threshold_value(f, num, den);
        // |t/p - num/den| <= 1/p
        Rational diff = Rational(t, f.p) - Rational(num, den);
        Rational bias = diff.num() < 0 ? Rational(0) - diff : diff;
        CHECK(bias <= Rational(1, f.p));
      }
    }
  }
}

TEST_CASE("exact k-wise uniformity by enumeration") {
  SUBCASE("p=5, k=2, pair of points") {
    HashFamily f = make_hash_family(2, 5, 5);
    auto counts = joint_output_counts(f, {1, 2}, 1 << 20);
    REQUIRE(counts.size() == 25);
    for (int64_t c : counts) CHECK(c == 1);  // p^{k-j} with j=k
  }
  SUBCASE("p=5, k=2, single point") {
    HashFamily f = make_hash_family(2, 5, 5);
    auto counts = joint_output_counts(f, {3}, 1 << 20);
    REQUIRE(counts.size() == 5);
    for (int64_t c : counts) CHECK(c == 5);
  }
  SUBCASE("j = k+1 points rejected") {
    HashFamily f = make_hash_family(2, 5, 5);
    CHECK_THROWS_WITH_AS(joint_output_counts(f, {0, 1, 2}, 1 << 20),
                         doctest::Contains("InvalidParams"), Error);
  }
  SUBCASE("family-too-large guard") {
    HashFamily f = make_hash_family(3, 257, 257);
    CHECK_THROWS_WITH_AS(joint_output_counts(f, {0, 1}, 1 << 10),
                         doctest::Contains("FamilyTooLarge"), Error);
  }
  SUBCASE("p=13 pairs at random points") {
    HashFamily f = make_hash_family(2, 13, 13);
    for (auto pts : {std::vector<int64_t>{0, 5}, {2, 11}, {7, 8}}) {
      auto counts = joint_output_counts(f, pts, 1 << 20);
      for (int64_t c : counts) CHECK(c == 1);
    }
  }
}

TEST_CASE("range mapping by floor scaling") {
  HashFamily f = make_hash_family(2, 11, 4);
  REQUIRE(f.p == 11);
  Seed s{{1, 1}};  // h(x) = 1 + x
  for (int64_t x = 0; x < 11; ++x) {
    int64_t field = eval_field(f, s, x);
    CHECK(eval_range(f, s, x) == field * 4 / 11);
    CHECK(eval_range(f, s, x) < 4);
  }
}
