#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "kldiv/rng.hpp"

namespace rng = kldiv::rng;

TEST_CASE("raw draws reproduce the SplitMix64 stream") {
  // Reference outputs of SplitMix64 seeded with 0, indexable by position.
  CHECK(rng::raw(0, 0) == UINT64_C(0xe220a8397b1dcdaf));
  CHECK(rng::raw(0, 1) == UINT64_C(0x6e789e6aa1b965f4));
  CHECK(rng::raw(0, 2) == UINT64_C(0x06c45d188009454f));
  CHECK(rng::raw(0, 3) == UINT64_C(0xf88bb8a8724c81ec));

  // Published test vector: first output for seed 1234567.
  CHECK(rng::raw(1234567, 0) == UINT64_C(0x599ed017fb08fc85));
}

TEST_CASE("uniform draws match their frozen decimal values") {
  CHECK(rng::uniform(0, 0) == 0.8833108082136426);
  CHECK(rng::uniform(0, 1) == 0.4315279970485101);
  CHECK(rng::uniform(0, 2) == 0.026433771592597854);

  CHECK(rng::uniform(42, 0) == 0.7415648787718233);
  CHECK(rng::uniform(42, 1) == 0.15991039287692022);
  CHECK(rng::uniform(42, 2) == 0.27860113025513866);
}

TEST_CASE("uniform stays strictly inside (0, 1)") {
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t j = 0; j < 20000; ++j) {
    double u = rng::uniform(7, j);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0x1p-53);
  CHECK(hi <= 1.0 - 0x1p-53);
}

TEST_CASE("inverse normal CDF hits reference quantiles") {
  CHECK(rng::inverse_normal_cdf(0.5) == 0.0);
  // scipy.stats.norm.ppf reference values.
  CHECK(rng::inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(rng::inverse_normal_cdf(0.84134474606854293) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rng::inverse_normal_cdf(0.0013498980316300933) ==
        doctest::Approx(-3.0).epsilon(1e-13));
}

TEST_CASE("inverse normal CDF is antisymmetric and monotone") {
  for (int i = 1; i < 100; ++i) {
    double p = i / 100.0;
    CHECK(rng::inverse_normal_cdf(p) == doctest::Approx(-rng::inverse_normal_cdf(1.0 - p))
                                            .epsilon(1e-12));
  }
  double prev = rng::inverse_normal_cdf(1e-6);
  for (int i = 1; i <= 1000; ++i) {
    double p = 1e-6 + (1.0 - 2e-6) * i / 1000.0;
    double q = rng::inverse_normal_cdf(p);
    CHECK(q > prev);
    prev = q;
  }
}

TEST_CASE("normal deviates are bounded and reproducible") {
  for (std::uint64_t j = 0; j < 5000; ++j) {
    double z = rng::normal(11, j);
    CHECK(std::fabs(z) <= 8.22);
    CHECK(rng::normal(11, j) == z);
  }
}

TEST_CASE("CounterRng walks the stream in index order") {
  kldiv::CounterRng gen(99);
  CHECK(gen.next_raw() == rng::raw(99, 0));
  CHECK(gen.next_uniform() == rng::uniform(99, 1));
  CHECK(gen.next_normal() == rng::normal(99, 2));
  CHECK(gen.index() == 3);
  CHECK(gen.seed() == 99);

  double x = gen.next_in(-2.0, 5.0);
  CHECK(x >= -2.0);
  CHECK(x < 5.0);
}

TEST_CASE("distinct seeds give distinct streams") {
  int equal = 0;
  for (std::uint64_t j = 0; j < 100; ++j)
    if (rng::raw(1, j) == rng::raw(2, j)) ++equal;
  CHECK(equal == 0);
}
