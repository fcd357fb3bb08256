#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bnndep/estimators.hpp"
#include "bnndep/model.hpp"
#include "bnndep/sampler.hpp"

namespace bnndep {

struct GridAxis {
  double min = -1.0;
  double max = 1.0;
  std::size_t steps = 41;

  std::vector<double> values() const { return make_axis(min, max, steps); }
};

// Width/depth sweep: one network per (depth, width) with every hidden layer
// of that width; the first two units of the last hidden layer are tapped.
struct SweepSpec {
  std::vector<std::size_t> depths{2, 3, 4};
  std::vector<std::size_t> widths{2, 5, 10};
  std::size_t input_dim = 100;
  std::size_t n = 100000;
  GridAxis grid;
  ActivationKind activation = ActivationKind::relu();
  PriorSpec prior = PriorSpec::gaussian_iid();
  Tap tap = Tap::kPreActivation;
  Tail tail = Tail::kUpper;
  std::uint64_t master_seed = 42;
  std::size_t threads = 0;  // does not affect results

  void validate() const;
};

struct GridSummary {
  double mean_abs = 0.0;
  double mean_std_error = 0.0;  // mean cell SE; bounds the SE of mean_abs
  double center_value = 0.0;
  double center_std_error = 0.0;
  double center_z1 = 0.0;
  double center_z2 = 0.0;
  double corner_mean_abs = 0.0;
  double peakedness = 0.0;
  std::size_t quadrant_sign_violations = 0;
};

struct SweepCell {
  std::size_t depth = 0;
  std::size_t width = 0;
  DeltaGrid grid;
  GridSummary summary;
};

using SweepResult = std::map<std::pair<std::size_t, std::size_t>, SweepCell>;

inline constexpr double kPeakednessEpsilon = 1e-12;
inline constexpr double kSignSignificance = 3.0;

// "L{depth}H{width}"
std::string cell_key(std::size_t depth, std::size_t width);

NetworkConfig make_uniform_config(std::size_t depth, std::size_t width, std::size_t input_dim,
                                  const ActivationKind& activation, const PriorSpec& prior);

// Sign Delta must take at (z1, z2) for layers >= 2. z = 0 sits on the
// non-positive side for the upper tail (xi_0 is non-increasing in the norm)
// and on the non-negative side for the lower tail.
int expected_delta_sign(double z1, double z2, Tail tail);

// Cells with |Delta| > multiplier * SE whose sign differs from expected_delta_sign.
std::size_t count_quadrant_violations(const DeltaGrid& grid, double multiplier = kSignSignificance);

GridSummary summarize(const DeltaGrid& grid);

// The seed of cell (depth, width); shared by run_sweep and anything that
// wants to reproduce a single cell.
SeedSpec sweep_cell_seed(std::uint64_t master_seed, std::size_t depth, std::size_t width);
Vector sweep_input(const SweepSpec& spec);

SweepResult run_sweep(const SweepSpec& spec);

}  // namespace bnndep
