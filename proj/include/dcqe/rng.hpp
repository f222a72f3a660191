#pragma once
#include <array>
#include <cmath>
#include <cstdint>

// Counter-based random number generation. Every draw is a pure function of
// (seed, stream, counter), so unit simulations replay bit-identically on any
// platform and in any execution order. No global state anywhere.

namespace dcqe::rng {

/// Philox4x32 keyed block function, 10 rounds. Output vectors for the
/// published reference inputs are pinned in the unit tests.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u; // key schedule increments
  for (int round = 0; round < 10; ++round) {
    if (round != 0) {
      key[0] += W0;
      key[1] += W1;
    }
    const std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
           std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
  }
  return ctr;
}

/// 64-bit avalanche finalizer (splitmix-style). Bijective on 2^64.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Per-unit seed: element unit_index of the splitmix sequence started at
/// master_seed. The increment is odd, so distinct indices always map to
/// distinct seeds under the same master seed.
constexpr std::uint64_t unit_seed(std::uint64_t master_seed, std::uint64_t unit_index) {
  return mix64(master_seed + (unit_index + 1) * 0x9E3779B97F4A7C15ull);
}

/// One deterministic random stream: a (seed, stream) pair over a 64-bit block
/// counter. Distinct stream ids under the same seed are independent, which
/// keeps generation draws and routing draws decoupled.
class Philox {
public:
  Philox(std::uint64_t seed, std::uint32_t stream)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream) {}

  std::uint64_t next_u64() {
    if (word_ == 2) {
      buf_ = philox4x32({std::uint32_t(block_), std::uint32_t(block_ >> 32), stream_, 0u}, key_);
      ++block_;
      word_ = 0;
    }
    const int i = 2 * word_++;
    return std::uint64_t(buf_[i]) | (std::uint64_t(buf_[i + 1]) << 32);
  }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// True with probability p. Exact at the endpoints: p >= 1 is always true,
  /// p <= 0 never.
  bool bernoulli(double p) { return uniform() < p; }

  /// Number of consecutive inactive pulses before the next active one, when a
  /// pulse is active with probability 1 - exp(-rate). Exact inversion: the
  /// log of the per-pulse survival probability is -rate.
  std::int64_t geometric_skip(double rate) {
    const double s = -std::log1p(-uniform()) / rate;
    return s >= 9.0e18 ? std::int64_t(9000000000000000000LL) : std::int64_t(s);
  }

  /// Poisson(rate) conditioned on being >= 1, by CDF inversion. Used for the
  /// pair count of a pulse already known to be active.
  int truncated_poisson(double rate) {
    const double u = uniform();
    const double p_ge1 = -std::expm1(-rate);
    double term = rate * std::exp(-rate) / p_ge1; // mass at k = 1
    double cum = term;
    int k = 1;
    while (u >= cum && k < 64) {
      ++k;
      term *= rate / k;
      cum += term;
    }
    return k;
  }

private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int word_ = 2; // u64 slots consumed from buf_; 2 means empty
};

} // namespace dcqe::rng
