#include "bnndep/oracle.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bnndep/parallel.hpp"

namespace bnndep {
namespace {

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;


void check_spec(const DiscreteNetSpec& spec, std::size_t layer, UnitPair units) {
  if (spec.widths.size() < 2) throw ConfigError("discrete net needs at least one hidden layer");
  for (std::size_t w : spec.widths) {
    if (w < 1) throw ConfigError("discrete net widths must be positive");
  }
  if (spec.input.size() != spec.widths[0]) throw DimensionError("discrete net input does not match widths[0]");
  if (spec.support.values.empty() || spec.support.values.size() != spec.support.weights.size()) {
    throw ConfigError("discrete support needs matching values and weights");
  }
  if (spec.support.total_weight() == 0) throw ConfigError("discrete support weights sum to zero");
  if (layer < 1 || layer > spec.depth()) throw DimensionError("layer outside the discrete net");
  if (units.first >= spec.widths[layer] || units.second >= spec.widths[layer] || units.first == units.second) {
    throw DimensionError("invalid unit pair for the discrete net");
  }
}

// Plain-loop forward pass up to `layer`; returns that layer's pre-activations.
// weights[k] is the flattened weight list in (layer, column, row) order.
void discrete_forward(const DiscreteNetSpec& spec, std::size_t layer, std::span<const double> weights,
                      std::vector<double>& prev, std::vector<double>& next) {
  prev.assign(spec.input.begin(), spec.input.end());
  std::size_t offset = 0;
  for (std::size_t l = 1; l <= layer; ++l) {
    const std::size_t rows = spec.widths[l - 1];
    const std::size_t cols = spec.widths[l];
    next.assign(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
      double g = 0.0;
      for (std::size_t r = 0; r < rows; ++r) g += weights[offset + c * rows + r] * prev[r];
      next[c] = g;
    }
    offset += rows * cols;
    if (l < layer) {
      for (double& x : next) x = apply_activation(spec.activation, x);
      prev.swap(next);
    }
  }
}

std::size_t weights_up_to(const DiscreteNetSpec& spec, std::size_t layer) {
  std::size_t count = 0;
  for (std::size_t l = 1; l <= layer; ++l) count += spec.widths[l - 1] * spec.widths[l];
  return count;
}

}  // namespace

std::uint64_t DiscreteSupport::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
}

std::size_t DiscreteNetSpec::weight_count() const { return weights_up_to(*this, depth()); }

DiscreteNetSpec DiscreteNetSpec::toy_net() {
  DiscreteNetSpec spec;
  spec.widths = {1, 1, 2};
  spec.activation = ActivationKind::relu();
  spec.support = DiscreteSupport::rademacher();
  spec.input = {1.0};
  return spec;
}

Rational enumerate_exact_delta(const DiscreteNetSpec& spec, std::size_t layer, UnitPair units, double z1,
                               double z2, Tail tail, std::size_t threads) {
  check_spec(spec, layer, units);
  // Weights of layers past `layer` do not affect it and integrate out.
  const std::size_t k = weights_up_to(spec, layer);
  if (k > kMaxEnumeratedWeights) {
    throw ConfigError("discrete net has " + std::to_string(k) + " weights; enumeration bound is " +
                      std::to_string(kMaxEnumeratedWeights));
  }
  const std::size_t s = spec.support.values.size();
  const std::uint64_t d = spec.support.total_weight();
  UInt128 configs = 1, denom = 1;
  for (std::size_t i = 0; i < k; ++i) {
    configs *= s;
    denom *= d;
    if (configs > kMaxEnumeratedConfigs) throw ConfigError("discrete support too large to enumerate");
    if (denom > (static_cast<UInt128>(1) << 31)) {
      throw ConfigError("discrete support probabilities too fine for exact arithmetic");
    }
  }
  const auto total = static_cast<std::uint64_t>(configs);

  struct Partial {
    UInt128 joint = 0, first = 0, second = 0;
  };
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), total);
  std::vector<Partial> partials(workers);
  parallel_for_ranges(workers, workers, [&](std::size_t wbegin, std::size_t wend) {
    std::vector<double> weights(k), prev, next;
    std::vector<std::size_t> digits(k);
    for (std::size_t w = wbegin; w < wend; ++w) {
      const std::uint64_t begin = total * w / workers;
      const std::uint64_t end = total * (w + 1) / workers;
      Partial acc;
      for (std::uint64_t c = begin; c < end; ++c) {
        std::uint64_t rest = c;
        UInt128 prob = 1;
        for (std::size_t i = 0; i < k; ++i) {
          const std::size_t digit = rest % s;
          rest /= s;
          weights[i] = spec.support.values[digit];
          prob *= spec.support.weights[digit];
        }
        discrete_forward(spec, layer, weights, prev, next);
        const double a = next[units.first];
        const double b = next[units.second];
        const bool e1 = tail == Tail::kUpper ? a >= z1 : a <= z1;
        const bool e2 = tail == Tail::kUpper ? b >= z2 : b <= z2;
        if (e1) acc.first += prob;
        if (e2) acc.second += prob;
        if (e1 && e2) acc.joint += prob;
      }
      partials[w] = acc;
    }
  });

  Partial sum;
  for (const auto& p : partials) {
    sum.joint += p.joint;
    sum.first += p.first;
    sum.second += p.second;
  }
  // Delta = joint / D - first * second / D^2 = (joint * D - first * second) / D^2.
  const auto num = static_cast<Int128>(sum.joint * denom) - static_cast<Int128>(sum.first * sum.second);
  const auto den = static_cast<std::int64_t>(denom * denom);
  return Rational(static_cast<std::int64_t>(num), den);
}

double analytic_delta_zero(const ActivationKind& activation, std::size_t prev_width) {
  if (activation.type != Activation::kReLU) {
    throw ConfigError("closed-form Delta(0, 0) is only available for ReLU");
  }
  if (prev_width < 1) throw ConfigError("previous width must be positive");
  const double p = std::ldexp(1.0, -static_cast<int>(prev_width));
  return p * (1.0 - p) / 4.0;
}

double analytic_delta_zero_z(const ActivationKind& activation, std::size_t prev_width, double z,
                             double mc_expectation) {
  const double half_pq = 2.0 * analytic_delta_zero(activation, prev_width);  // p (1 - p) / 2
  if (z > 0.0) return -half_pq * mc_expectation;
  if (z < 0.0) return half_pq * (1.0 - mc_expectation);
  return half_pq / 2.0;
}

double brute_force_tau(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("u and v must have the same length");
  const std::size_t n = u.size();
  if (n < 2) throw EstimationError("Kendall tau needs at least 2 samples");
  std::int64_t score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double du = u[i] - u[j];
      const double dv = v[i] - v[j];
      if ((du > 0 && dv > 0) || (du < 0 && dv < 0)) ++score;
      else if ((du > 0 && dv < 0) || (du < 0 && dv > 0)) --score;
    }
  }
  const auto nn = static_cast<std::int64_t>(n);
  return static_cast<double>(score) / static_cast<double>(nn * (nn - 1) / 2);
}

SampleBatch sample_discrete_units(const DiscreteNetSpec& spec, std::size_t layer, UnitPair units, std::size_t n,
                                  const SeedSpec& seed, std::size_t threads) {
  check_spec(spec, layer, units);
  const std::size_t k = weights_up_to(spec, layer);
  const std::uint64_t total = spec.support.total_weight();
  SampleBatch batch;
  batch.layer = layer;
  batch.tap = Tap::kPreActivation;
  batch.u.resize(n);
  batch.v.resize(n);
  const SeedSpec weights_seed = seed.child("weights");
  parallel_for_ranges(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> weights(k), prev, next;
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(weights_seed.child(std::uint64_t{0}).child(static_cast<std::uint64_t>(i)));
      for (double& w : weights) {
        // Inverse-CDF draw over the integer weights.
        std::uint64_t ticket = rng() % total;
        std::size_t digit = 0;
        while (ticket >= spec.support.weights[digit]) ticket -= spec.support.weights[digit++];
        w = spec.support.values[digit];
      }
      discrete_forward(spec, layer, weights, prev, next);
      batch.u[i] = next[units.first];
      batch.v[i] = next[units.second];
    }
  });
  return batch;
}

}  // namespace bnndep
