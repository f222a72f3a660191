#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dcqe/rng.hpp"

using namespace dcqe;

TEST_SUITE("rng") {

// Published reference vectors for the 10-round 4x32 keyed block function.
TEST_CASE("block function matches the reference vectors") {
  {
    const auto out = rng::philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    const auto out = rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    const auto out = rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                     {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
}

// Splitmix finalizer sequence values for master seeds 0 and 42.
TEST_CASE("unit seed derivation matches the reference sequence") {
  CHECK(rng::unit_seed(0, 0) == 0xe220a8397b1dcdafull);
  CHECK(rng::unit_seed(0, 1) == 0x6e789e6aa1b965f4ull);
  CHECK(rng::unit_seed(0, 2) == 0x06c45d188009454full);
  CHECK(rng::unit_seed(42, 0) == 0xbdd732262feb6e95ull);
  CHECK(rng::unit_seed(42, 1) == 0x28efe333b266f103ull);
}

TEST_CASE("unit seeds are distinct across a large index range") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 10000; ++i) seeds.push_back(rng::unit_seed(7, i));
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("identical construction replays the identical stream") {
  rng::Philox a(123456789, 0);
  rng::Philox b(123456789, 0);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams of one seed are decoupled") {
  rng::Philox a(99, 0);
  rng::Philox b(99, 1);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64() ? 1 : 0;
  CHECK(same == 0);
}

TEST_CASE("uniform lies in the half-open unit interval") {
  rng::Philox g(5, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("bernoulli endpoints are exact") {
  rng::Philox g(7, 0);
  for (int i = 0; i < 10000; ++i) CHECK(g.bernoulli(1.0));
  for (int i = 0; i < 10000; ++i) CHECK_FALSE(g.bernoulli(0.0));
}

TEST_CASE("geometric skip has the inactive-pulse distribution") {
  // Skip counts follow Geometric(q) with q = 1 - exp(-rate): mean (1-q)/q.
  const double rate = 0.01;
  const double q = -std::expm1(-rate);
  const double mean = (1.0 - q) / q;
  const double var = (1.0 - q) / (q * q);

  rng::Philox g(2718, 0);
  const int n = 1000000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += double(g.geometric_skip(rate));
  const double se = std::sqrt(var / n);
  CHECK(std::fabs(sum / n - mean) < 5.0 * se);
}

TEST_CASE("truncated poisson is never below one and has the right mass at one") {
  const double rate = 0.01;
  // P(N = 1 | N >= 1) for Poisson(rate).
  const double p1 = rate * std::exp(-rate) / -std::expm1(-rate);

  rng::Philox g(314159, 0);
  const int n = 1000000;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const int k = g.truncated_poisson(rate);
    REQUIRE(k >= 1);
    ones += k == 1 ? 1 : 0;
  }
  const double se = std::sqrt(p1 * (1.0 - p1) / n);
  CHECK(std::fabs(double(ones) / n - p1) < 5.0 * se);
}

} // TEST_SUITE
