#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "bnndep/estimators.hpp"
#include "bnndep/model.hpp"
#include "bnndep/sampler.hpp"

namespace bnndep {

using Rational = boost::rational<std::int64_t>;

// Finite weight law: value k has probability weights[k] / sum(weights).
struct DiscreteSupport {
  std::vector<double> values;
  std::vector<std::uint64_t> weights;

  static DiscreteSupport rademacher() { return {{-1.0, 1.0}, {1, 1}}; }
  std::uint64_t total_weight() const;
};

// Network whose every weight is an independent draw from `support`. Not
// elliptical, so it checks estimator arithmetic but not the elliptical-prior
// sign results (except where only sign symmetry is used).
struct DiscreteNetSpec {
  std::vector<std::size_t> widths;  // widths[0] = input dimension
  ActivationKind activation = ActivationKind::relu();
  DiscreteSupport support = DiscreteSupport::rademacher();
  std::vector<double> input;

  std::size_t depth() const { return widths.empty() ? 0 : widths.size() - 1; }
  std::size_t weight_count() const;

  // Input (1), widths 1 -> 1 -> 2, ReLU, Rademacher weights.
  static DiscreteNetSpec toy_net();
};

inline constexpr std::size_t kMaxEnumeratedWeights = 24;
inline constexpr std::uint64_t kMaxEnumeratedConfigs = std::uint64_t{1} << 24;

// Exact Delta (upper or lower tail) of two units of `layer` by enumerating
// every weight configuration. Throws ConfigError past the enumeration bound.
Rational enumerate_exact_delta(const DiscreteNetSpec& spec, std::size_t layer, UnitPair units, double z1,
                               double z2, Tail tail = Tail::kUpper, std::size_t threads = 0);

// p (1 - p) / 4 with p = 2^-prev_width: Delta(0, 0) of layer 2 for ReLU with
// sign-symmetric, atomless layer-1 pre-activations.
double analytic_delta_zero(const ActivationKind& activation, std::size_t prev_width);

// Delta(0, z) for the same network given
// mc_expectation = E_X[P_W(W^T X >= z | X != 0)].
double analytic_delta_zero_z(const ActivationKind& activation, std::size_t prev_width, double z,
                             double mc_expectation);

// O(n^2) tau-a straight from the pair definition.
double brute_force_tau(std::span<const double> u, std::span<const double> v);

// Monte Carlo draws of the discrete network through the same seeded
// per-sample streams as the elliptical sampler.
SampleBatch sample_discrete_units(const DiscreteNetSpec& spec, std::size_t layer, UnitPair units, std::size_t n,
                                  const SeedSpec& seed, std::size_t threads = 0);

}  // namespace bnndep
