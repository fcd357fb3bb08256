#include "bnndep/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bnndep {

void SweepSpec::validate() const {
  if (depths.empty() || widths.empty()) throw ConfigError("sweep needs at least one depth and one width");
  for (std::size_t d : depths) {
    if (d < 1) throw ConfigError("sweep depths must be positive");
  }
  for (std::size_t w : widths) {
    if (w < 2) throw ConfigError("sweep widths must be at least 2 (two units are tapped)");
  }
  if (input_dim < 1) throw ConfigError("input dimension must be positive");
  if (n < 2) throw ConfigError("sweep needs n >= 2");
  if (grid.steps < 2) throw ConfigError("grid needs at least 2 steps");
  if (!(grid.min < grid.max)) throw ConfigError("grid min must be below grid max");
}

std::string cell_key(std::size_t depth, std::size_t width) {
  return "L" + std::to_string(depth) + "H" + std::to_string(width);
}

NetworkConfig make_uniform_config(std::size_t depth, std::size_t width, std::size_t input_dim,
                                  const ActivationKind& activation, const PriorSpec& prior) {
  NetworkConfig config;
  config.depth = depth;
  config.widths.assign(depth + 1, width);
  config.widths[0] = input_dim;
  config.activation = activation;
  config.priors.assign(depth, prior);
  return validate_config(config);
}

int expected_delta_sign(double z1, double z2, Tail tail) {
  if (tail == Tail::kUpper) return (z1 > 0.0) == (z2 > 0.0) ? 1 : -1;
  return (z1 < 0.0) == (z2 < 0.0) ? 1 : -1;
}

std::size_t count_quadrant_violations(const DeltaGrid& grid, double multiplier) {
  std::size_t violations = 0;
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    for (std::size_t b = 0; b < grid.cols(); ++b) {
      const auto& cell = grid.at(a, b);
      if (!(std::abs(cell.value) > multiplier * cell.std_error)) continue;
      const int sign = cell.value > 0.0 ? 1 : -1;
      if (sign != expected_delta_sign(grid.z1_values[a], grid.z2_values[b], grid.tail)) ++violations;
    }
  }
  return violations;
}

GridSummary summarize(const DeltaGrid& grid) {
  GridSummary s;
  if (grid.cells.empty()) return s;
  double abs_sum = 0.0, se_sum = 0.0;
  for (const auto& c : grid.cells) {
    abs_sum += std::abs(c.value);
    se_sum += c.std_error;
  }
  const double count = static_cast<double>(grid.cells.size());
  s.mean_abs = abs_sum / count;
  s.mean_std_error = se_sum / count;

  // Nearest cell to the origin; first one wins ties.
  double best = std::numeric_limits<double>::infinity();
  std::size_t ca = 0, cb = 0;
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    for (std::size_t b = 0; b < grid.cols(); ++b) {
      const double d = grid.z1_values[a] * grid.z1_values[a] + grid.z2_values[b] * grid.z2_values[b];
      if (d < best) {
        best = d;
        ca = a;
        cb = b;
      }
    }
  }
  s.center_value = grid.at(ca, cb).value;
  s.center_std_error = grid.at(ca, cb).std_error;
  s.center_z1 = grid.z1_values[ca];
  s.center_z2 = grid.z2_values[cb];

  const std::size_t ra = grid.rows() - 1, rb = grid.cols() - 1;
  s.corner_mean_abs = (std::abs(grid.at(0, 0).value) + std::abs(grid.at(0, rb).value) +
                       std::abs(grid.at(ra, 0).value) + std::abs(grid.at(ra, rb).value)) /
                      4.0;
  s.peakedness = s.center_value / std::max(s.corner_mean_abs, kPeakednessEpsilon);
  s.quadrant_sign_violations = count_quadrant_violations(grid);
  return s;
}

SeedSpec sweep_cell_seed(std::uint64_t master_seed, std::size_t depth, std::size_t width) {
  return SeedSpec(master_seed).child("sweep").child(cell_key(depth, width));
}

Vector sweep_input(const SweepSpec& spec) { return generate_input(spec.input_dim, SeedSpec(spec.master_seed)); }

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const Vector input = sweep_input(spec);
  const std::vector<double> axis = spec.grid.values();
  SweepResult result;
  for (std::size_t depth : spec.depths) {
    for (std::size_t width : spec.widths) {
      const NetworkConfig config = make_uniform_config(depth, width, spec.input_dim, spec.activation, spec.prior);
      const SampleBatch batch = sample_units(config, input, depth, UnitPair{0, 1}, spec.tap, spec.n,
                                             sweep_cell_seed(spec.master_seed, depth, width), false, spec.threads);
      SweepCell cell;
      cell.depth = depth;
      cell.width = width;
      cell.grid = delta_grid(batch, axis, axis, spec.tail);
      cell.summary = summarize(cell.grid);
      result.emplace(std::make_pair(depth, width), std::move(cell));
    }
  }
  return result;
}

}  // namespace bnndep
