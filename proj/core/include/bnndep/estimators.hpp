#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bnndep/model.hpp"
#include "bnndep/rng.hpp"
#include "bnndep/sampler.hpp"

namespace bnndep {

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

enum class Tail { kUpper, kLower };
enum class Combo { kSingle, kSumOfCopies, kDiffOfCopies };
enum class ComboMode { kSum, kDiff };

std::string to_string(Tail tail);
std::string to_string(Combo combo);
Tail parse_tail(std::string_view name);
Combo parse_combo(std::string_view name);

// Row-major (z1-major) grid of Delta estimates: cell (a, b) belongs to
// (z1_values[a], z2_values[b]).
struct DeltaGrid {
  std::vector<double> z1_values;
  std::vector<double> z2_values;
  std::vector<EstimateWithError> cells;
  Tail tail = Tail::kUpper;
  Combo combo = Combo::kSingle;

  std::size_t rows() const { return z1_values.size(); }
  std::size_t cols() const { return z2_values.size(); }
  const EstimateWithError& at(std::size_t a, std::size_t b) const { return cells.at(a * cols() + b); }
  EstimateWithError& at(std::size_t a, std::size_t b) { return cells.at(a * cols() + b); }
};

// Conditional sign-agreement profile of one layer. Cells whose conditioning
// event is empty are std::nullopt.
struct PdProfile {
  std::vector<double> z_values;
  std::vector<std::optional<EstimateWithError>> right_tail;
  std::vector<std::optional<EstimateWithError>> left_tail;
  std::optional<EstimateWithError> min_right;
  std::optional<EstimateWithError> min_left;
};

// `steps` equally spaced points from lo to hi inclusive, computed as
// lo + (hi - lo) * i / (steps - 1) so a symmetric axis hits 0 exactly.
std::vector<double> make_axis(double lo, double hi, std::size_t steps);

// Joint and marginal event counts turned into p11 - p1 p2 with the
// influence-function standard error
//   psi_i = (I11 - p11) - p2 (I1 - p1) - p1 (I2 - p2),  se = sd(psi) / sqrt(n).
EstimateWithError delta_from_counts(std::size_t n11, std::size_t n1, std::size_t n2, std::size_t n);

// P(u >= z1, v >= z2) - P(u >= z1) P(v >= z2), weak inequalities.
EstimateWithError delta_upper(std::span<const double> u, std::span<const double> v, double z1, double z2);
EstimateWithError delta_upper(const SampleBatch& batch, double z1, double z2);
// Same with both events reversed to <=.
EstimateWithError delta_lower(std::span<const double> u, std::span<const double> v, double z1, double z2);
EstimateWithError delta_lower(const SampleBatch& batch, double z1, double z2);

// (u1 + u2, v1 + v2) for kSum, (u1 - u2, v1 - v2) for kDiff.
SampleBatch combine_replicas(const ReplicaBatch& batch, ComboMode mode);
EstimateWithError delta_combo(const ReplicaBatch& batch, double z1, double z2, ComboMode mode);

// Unbiased sample covariance; se from the covariance influence function
// psi_i = (u_i - mean u)(v_i - mean v) - c.
EstimateWithError covariance(std::span<const double> u, std::span<const double> v);
EstimateWithError covariance(const SampleBatch& batch);

// Kendall tau-a in O(n log n) (ties in either coordinate count as neither
// concordant nor discordant). se is the independence-null value
// sqrt(2 (2n + 5) / (9 n (n - 1))).
EstimateWithError kendall_tau(std::span<const double> u, std::span<const double> v);
EstimateWithError kendall_tau(const SampleBatch& batch);

// Pearson correlation of mid-ranks; se is the null value 1 / sqrt(n - 1).
// Throws EstimationError when either coordinate is constant.
EstimateWithError spearman_rho(std::span<const double> u, std::span<const double> v);
EstimateWithError spearman_rho(const SampleBatch& batch);

// Right tail: P(X_1 >= 0, ..., X_{N-1} >= 0 | X_N >= z); left tail with <=.
// X_N is the last column of `layer_samples` (rows = draws).
PdProfile pd_profile(const Matrix& layer_samples, std::span<const double> z_values);

// Empirical q-quantile (order statistic at floor(q (n - 1))).
double empirical_quantile(std::span<const double> values, double q);

// xi_z(y) = P(W^T X >= z | ||X||_Sigma = y): Q(z / y) for Gaussian families,
// the t_nu survival function at z / y for kStudentT, and [z <= 0] at y = 0.
double xi(const PriorSpec& prior, double z, double y);

// Covariance of xi_z1(Y_i) and xi_z2(Y_i) over prev_norms Y.
EstimateWithError rao_blackwell_delta(const SampleBatch& batch, const PriorSpec& prior, double z1, double z2);

DeltaGrid delta_grid(const SampleBatch& batch, std::span<const double> z1_values,
                     std::span<const double> z2_values, Tail tail = Tail::kUpper);
DeltaGrid delta_grid(const ReplicaBatch& batch, std::span<const double> z1_values,
                     std::span<const double> z2_values, Tail tail, ComboMode mode);

// Seeded nonparametric bootstrap of any batch statistic.
double bootstrap_std_error(const SampleBatch& batch, const std::function<double(const SampleBatch&)>& statistic,
                           std::size_t resamples, const SeedSpec& seed);

}  // namespace bnndep
