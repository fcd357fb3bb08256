#include "bnndep/sampler.hpp"

#include <cmath>
#include <string>

#include <boost/random/chi_squared_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "bnndep/parallel.hpp"

namespace bnndep {
namespace {

// Overwrites `w` with independent columns of the prior's column law.
void fill_weights(const PriorSpec& spec, Eigen::Ref<Matrix> w, Rng& rng) {
  boost::random::normal_distribution<double> normal;
  const Eigen::Index rows = w.rows();
  const double s = spec.scale(static_cast<std::size_t>(rows));
  for (Eigen::Index c = 0; c < w.cols(); ++c) {
    auto col = w.col(c);
    for (Eigen::Index r = 0; r < rows; ++r) col[r] = normal(rng);
    switch (spec.family) {
      case PriorFamily::kGaussianIid:
        col *= s;
        break;
      case PriorFamily::kGaussianEquicorrelated: {
        // Symmetric square root of (1 - rho) I + rho 11^T applied to col:
        // sqrt(1 - rho) on the centred part, sqrt(1 + (m - 1) rho) on the mean.
        const double rho = spec.rho_w;
        const double mean = col.mean();
        const double a = std::sqrt(1.0 - rho);
        const double b = std::sqrt(1.0 + (static_cast<double>(rows) - 1.0) * rho);
        col = (s * a) * (col.array() - mean).matrix() + Vector::Constant(rows, s * b * mean);
        break;
      }
      case PriorFamily::kStudentT: {
        boost::random::chi_squared_distribution<double> chi2(spec.nu);
        col *= s * std::sqrt(spec.nu / chi2(rng));
        break;
      }
    }
  }
}

void check_request(const NetworkConfig& config, const Vector& input, std::size_t layer) {
  validate_config(config);
  if (static_cast<std::size_t>(input.size()) != config.widths[0]) {
    throw DimensionError("input length " + std::to_string(input.size()) + " does not match widths[0] = " +
                         std::to_string(config.widths[0]));
  }
  if (layer < 1 || layer > config.depth) {
    throw DimensionError("layer " + std::to_string(layer) + " outside 1.." + std::to_string(config.depth));
  }
}

void check_units(const NetworkConfig& config, std::size_t layer, UnitPair units) {
  const std::size_t width = config.width(layer);
  if (units.first >= width || units.second >= width) {
    throw DimensionError("unit index out of range for layer of width " + std::to_string(width));
  }
  if (units.first == units.second) throw DimensionError("unit pair must name two distinct units");
}

// Per-thread forward workspace. Draw i of replica r only reads the streams
// seed/"weights"/r/i/l, one per layer.
class DrawEngine {
 public:
  DrawEngine(const NetworkConfig& config, const Vector& input, std::size_t layer, const SeedSpec& seed)
      : config_(config), input_(input), layer_(layer), weights_seed_(seed.child("weights")) {
    weights_.reserve(layer);
    pre_.reserve(layer);
    post_.reserve(layer);
    for (std::size_t l = 1; l <= layer; ++l) {
      weights_.emplace_back(config.width(l - 1), config.width(l));
      pre_.emplace_back(config.width(l));
      post_.emplace_back(config.width(l));
    }
  }

  void draw(std::uint64_t replica, std::uint64_t index) {
    const SeedSpec sample_seed = weights_seed_.child(replica).child(index);
    const Vector* previous = &input_;
    for (std::size_t l = 1; l <= layer_; ++l) {
      Rng rng(sample_seed.child(static_cast<std::uint64_t>(l)));
      Matrix& w = weights_[l - 1];
      fill_weights(config_.prior(l), w, rng);
      pre_[l - 1].noalias() = w.transpose() * *previous;
      post_[l - 1] = pre_[l - 1];
      apply_activation_inplace(config_.activation, post_[l - 1]);
      previous = &post_[l - 1];
    }
  }

  const Vector& tapped(Tap tap) const { return tap == Tap::kPreActivation ? pre_[layer_ - 1] : post_[layer_ - 1]; }

  // ||h^(l-1)||_Sigma of the last draw under the tapped layer's prior.
  double previous_norm() const {
    const Vector& h = post_[layer_ - 2];
    return config_.prior(layer_).sigma_norm(std::span<const double>(h.data(), static_cast<std::size_t>(h.size())));
  }

 private:
  const NetworkConfig& config_;
  const Vector& input_;
  std::size_t layer_;
  SeedSpec weights_seed_;
  std::vector<Matrix> weights_;
  std::vector<Vector> pre_;
  std::vector<Vector> post_;
};

}  // namespace

std::string to_string(Tap tap) { return tap == Tap::kPreActivation ? "pre" : "post"; }

Tap parse_tap(std::string_view name) {
  if (name == "pre") return Tap::kPreActivation;
  if (name == "post") return Tap::kPostActivation;
  throw ConfigError("unknown tap '" + std::string(name) + "' (expected pre or post)");
}

Vector generate_input(std::size_t dim, const SeedSpec& seed) {
  if (dim < 1) throw ConfigError("input dimension must be positive");
  Rng rng(seed.child("input"));
  boost::random::normal_distribution<double> normal;
  Vector x(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
  return x;
}

Matrix sample_weight_matrix(const PriorSpec& spec, std::size_t rows, std::size_t cols, Rng& rng) {
  validate_prior(spec, rows);
  Matrix w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  fill_weights(spec, w, rng);
  return w;
}

SampleBatch sample_units(const NetworkConfig& config, const Vector& input, std::size_t layer, UnitPair units,
                         Tap tap, std::size_t n, const SeedSpec& seed, bool want_norms, std::size_t threads) {
  check_request(config, input, layer);
  check_units(config, layer, units);
  if (want_norms && layer < 2) {
    throw ConfigError("previous-layer norms need layer >= 2 (layer 1 has a deterministic input)");
  }
  SampleBatch batch;
  batch.layer = layer;
  batch.tap = tap;
  batch.u.resize(n);
  batch.v.resize(n);
  if (want_norms) batch.prev_norms.emplace(n);

  parallel_for_ranges(n, threads, [&](std::size_t begin, std::size_t end) {
    DrawEngine engine(config, input, layer, seed);
    for (std::size_t i = begin; i < end; ++i) {
      engine.draw(0, i);
      const Vector& values = engine.tapped(tap);
      batch.u[i] = values[static_cast<Eigen::Index>(units.first)];
      batch.v[i] = values[static_cast<Eigen::Index>(units.second)];
      if (want_norms) (*batch.prev_norms)[i] = engine.previous_norm();
    }
  });
  return batch;
}

ReplicaBatch sample_replicas(const NetworkConfig& config, const Vector& input, std::size_t layer, UnitPair units,
                             Tap tap, std::size_t n, const SeedSpec& seed, std::size_t threads) {
  check_request(config, input, layer);
  check_units(config, layer, units);
  ReplicaBatch batch;
  batch.layer = layer;
  batch.tap = tap;
  batch.u1.resize(n);
  batch.u2.resize(n);
  batch.v1.resize(n);
  batch.v2.resize(n);

  const auto j1 = static_cast<Eigen::Index>(units.first);
  const auto j2 = static_cast<Eigen::Index>(units.second);
  parallel_for_ranges(n, threads, [&](std::size_t begin, std::size_t end) {
    DrawEngine engine(config, input, layer, seed);
    for (std::size_t i = begin; i < end; ++i) {
      engine.draw(0, i);
      batch.u1[i] = engine.tapped(tap)[j1];
      batch.v1[i] = engine.tapped(tap)[j2];
      engine.draw(1, i);
      batch.u2[i] = engine.tapped(tap)[j1];
      batch.v2[i] = engine.tapped(tap)[j2];
    }
  });
  return batch;
}

Matrix sample_layer(const NetworkConfig& config, const Vector& input, std::size_t layer, Tap tap, std::size_t n,
                    const SeedSpec& seed, std::size_t threads) {
  check_request(config, input, layer);
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(config.width(layer)));
  parallel_for_ranges(n, threads, [&](std::size_t begin, std::size_t end) {
    DrawEngine engine(config, input, layer, seed);
    for (std::size_t i = begin; i < end; ++i) {
      engine.draw(0, i);
      out.row(static_cast<Eigen::Index>(i)) = engine.tapped(tap).transpose();
    }
  });
  return out;
}

}  // namespace bnndep
