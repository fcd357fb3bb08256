#include "bnndep/rng.hpp"

namespace bnndep {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  return mix64(state);
}

SeedSpec::SeedSpec(std::uint64_t master_seed) : master_seed_(master_seed), key_(mix64(master_seed + kGolden)) {}

SeedSpec SeedSpec::child(std::string_view label) const {
  return SeedSpec(master_seed_, mix64(key_ ^ hash_label(label)) + kGolden);
}

SeedSpec SeedSpec::child(std::uint64_t index) const {
  // Odd multiplier keeps index -> key injective before mixing.
  return SeedSpec(master_seed_, mix64(key_ + (index + 1) * 0xd1342543de82ef95ULL));
}

Rng::Rng(std::uint64_t key) {
  std::uint64_t state = key;
  for (auto& word : s_) word = splitmix64(state);
}

}  // namespace bnndep
