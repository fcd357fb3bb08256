#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bnndep/model.hpp"
#include "bnndep/rng.hpp"

namespace bnndep {

enum class Tap { kPreActivation, kPostActivation };

std::string to_string(Tap tap);
Tap parse_tap(std::string_view name);

struct UnitPair {
  std::size_t first = 0;
  std::size_t second = 1;
};

// n paired draws of two units of one layer. prev_norms[i] = ||h^(l-1)_i||_Sigma
// under the layer-l prior, present only when requested.
struct SampleBatch {
  std::size_t layer = 0;
  Tap tap = Tap::kPreActivation;
  std::vector<double> u;
  std::vector<double> v;
  std::optional<std::vector<double>> prev_norms;

  std::size_t size() const { return u.size(); }
};

// Row i holds the same two units taken from two independent network draws.
struct ReplicaBatch {
  std::size_t layer = 0;
  Tap tap = Tap::kPreActivation;
  std::vector<double> u1, u2, v1, v2;

  std::size_t size() const { return u1.size(); }
};

// Standard Gaussian vector, fixed once and shared by every Monte Carlo draw.
Vector generate_input(std::size_t dim, const SeedSpec& seed);

// rows x cols matrix whose columns are independent draws of the prior's
// column law on R^rows.
Matrix sample_weight_matrix(const PriorSpec& spec, std::size_t rows, std::size_t cols, Rng& rng);

// Draw i resamples every layer up to `layer` from its own stream
// seed/"weights"/replica/i/layer, so the result is independent of `threads`.
// threads = 0 uses the hardware concurrency.
SampleBatch sample_units(const NetworkConfig& config, const Vector& input, std::size_t layer,
                         UnitPair units, Tap tap, std::size_t n, const SeedSpec& seed,
                         bool want_norms = false, std::size_t threads = 0);

// Replica 1 uses the same streams as sample_units, replica 2 fresh ones.
ReplicaBatch sample_replicas(const NetworkConfig& config, const Vector& input, std::size_t layer,
                             UnitPair units, Tap tap, std::size_t n, const SeedSpec& seed,
                             std::size_t threads = 0);

// n x H_l matrix of every unit of one layer (row = draw), same streams as
// sample_units.
Matrix sample_layer(const NetworkConfig& config, const Vector& input, std::size_t layer, Tap tap,
                    std::size_t n, const SeedSpec& seed, std::size_t threads = 0);

}  // namespace bnndep
