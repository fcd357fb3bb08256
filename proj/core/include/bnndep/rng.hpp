#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace bnndep {

// Hierarchical seed: a master seed plus a path of stream labels folded into a
// 64-bit key. Distinct paths give statistically independent streams, so any
// sample can be regenerated from (master seed, labels, index) alone.
class SeedSpec {
 public:
  explicit SeedSpec(std::uint64_t master_seed = 42);

  SeedSpec child(std::string_view label) const;
  SeedSpec child(std::uint64_t index) const;

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t key() const { return key_; }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;

 private:
  SeedSpec(std::uint64_t master_seed, std::uint64_t key) : master_seed_(master_seed), key_(key) {}

  std::uint64_t master_seed_;
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

// xoshiro256++ seeded from a stream key through SplitMix64. Satisfies
// UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(const SeedSpec& seed) : Rng(seed.key()) {}
  explicit Rng(std::uint64_t key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace bnndep
