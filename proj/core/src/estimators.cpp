#include "bnndep/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/students_t.hpp>

namespace bnndep {
namespace {

void check_pair(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("u and v must have the same length");
  if (u.size() < 2) throw EstimationError("estimator needs at least 2 samples");
}

void check_axis(std::span<const double> values, const char* name) {
  if (values.empty()) throw ConfigError(std::string(name) + " grid is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ConfigError(std::string(name) + " grid must be strictly increasing");
  }
}

// Counts of a z1 x z2 grid via one histogram pass: sample i lands in bucket
// (a_i, b_i), and every cell's joint count is a 2-D prefix/suffix sum.
DeltaGrid grid_from_samples(std::span<const double> u, std::span<const double> v, std::span<const double> z1,
                            std::span<const double> z2, Tail tail) {
  check_pair(u, v);
  check_axis(z1, "z1");
  check_axis(z2, "z2");
  const std::size_t g1 = z1.size();
  const std::size_t g2 = z2.size();
  const std::size_t stride = g2 + 1;
  std::vector<std::size_t> acc((g1 + 1) * stride, 0);

  for (std::size_t i = 0; i < u.size(); ++i) {
    std::size_t a, b;
    if (tail == Tail::kUpper) {
      // u >= z1[k]  <=>  k < a
      a = static_cast<std::size_t>(std::upper_bound(z1.begin(), z1.end(), u[i]) - z1.begin());
      b = static_cast<std::size_t>(std::upper_bound(z2.begin(), z2.end(), v[i]) - z2.begin());
    } else {
      // u <= z1[k]  <=>  k >= a
      a = static_cast<std::size_t>(std::lower_bound(z1.begin(), z1.end(), u[i]) - z1.begin());
      b = static_cast<std::size_t>(std::lower_bound(z2.begin(), z2.end(), v[i]) - z2.begin());
    }
    ++acc[a * stride + b];
  }

  if (tail == Tail::kUpper) {
    // acc[a][b] <- sum over a' >= a, b' >= b.
    for (std::size_t a = g1 + 1; a-- > 0;) {
      for (std::size_t b = g2 + 1; b-- > 0;) {
        std::size_t s = acc[a * stride + b];
        if (a + 1 <= g1) s += acc[(a + 1) * stride + b];
        if (b + 1 <= g2) s += acc[a * stride + b + 1];
        if (a + 1 <= g1 && b + 1 <= g2) s -= acc[(a + 1) * stride + b + 1];
        acc[a * stride + b] = s;
      }
    }
  } else {
    // acc[a][b] <- sum over a' <= a, b' <= b.
    for (std::size_t a = 0; a <= g1; ++a) {
      for (std::size_t b = 0; b <= g2; ++b) {
        std::size_t s = acc[a * stride + b];
        if (a > 0) s += acc[(a - 1) * stride + b];
        if (b > 0) s += acc[a * stride + b - 1];
        if (a > 0 && b > 0) s -= acc[(a - 1) * stride + b - 1];
        acc[a * stride + b] = s;
      }
    }
  }

  DeltaGrid grid;
  grid.z1_values.assign(z1.begin(), z1.end());
  grid.z2_values.assign(z2.begin(), z2.end());
  grid.tail = tail;
  grid.cells.resize(g1 * g2);
  const std::size_t n = u.size();
  for (std::size_t k = 0; k < g1; ++k) {
    for (std::size_t m = 0; m < g2; ++m) {
      std::size_t n11, n1, n2;
      if (tail == Tail::kUpper) {
        n11 = acc[(k + 1) * stride + (m + 1)];
        n1 = acc[(k + 1) * stride + 0];
        n2 = acc[0 * stride + (m + 1)];
      } else {
        n11 = acc[k * stride + m];
        n1 = acc[k * stride + g2];
        n2 = acc[g1 * stride + m];
      }
      grid.cells[k * g2 + m] = delta_from_counts(n11, n1, n2, n);
    }
  }
  return grid;
}

}  // namespace

std::string to_string(Tail tail) { return tail == Tail::kUpper ? "upper" : "lower"; }

std::string to_string(Combo combo) {
  switch (combo) {
    case Combo::kSingle: return "single";
    case Combo::kSumOfCopies: return "sum";
    case Combo::kDiffOfCopies: return "diff";
  }
  return "unknown";
}

Tail parse_tail(std::string_view name) {
  if (name == "upper") return Tail::kUpper;
  if (name == "lower") return Tail::kLower;
  throw ConfigError("unknown tail '" + std::string(name) + "' (expected upper or lower)");
}

Combo parse_combo(std::string_view name) {
  if (name == "single") return Combo::kSingle;
  if (name == "sum") return Combo::kSumOfCopies;
  if (name == "diff") return Combo::kDiffOfCopies;
  throw ConfigError("unknown combo '" + std::string(name) + "' (expected single, sum or diff)");
}

std::vector<double> make_axis(double lo, double hi, std::size_t steps) {
  if (steps < 1) throw ConfigError("axis needs at least one point");
  if (steps == 1) return {lo};
  if (!(lo < hi)) throw ConfigError("axis minimum must be below its maximum");
  std::vector<double> axis(steps);
  const double span = hi - lo;
  const double last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) axis[i] = lo + span * static_cast<double>(i) / last;
  axis.back() = hi;
  return axis;
}

EstimateWithError delta_from_counts(std::size_t n11, std::size_t n1, std::size_t n2, std::size_t n) {
  if (n < 2) throw EstimationError("Delta estimate needs at least 2 samples");
  if (n11 > std::min(n1, n2) || n1 + n2 - n11 > n) throw EstimationError("inconsistent event counts");
  const double dn = static_cast<double>(n);
  const double p11 = static_cast<double>(n11) / dn;
  const double p1 = static_cast<double>(n1) / dn;
  const double p2 = static_cast<double>(n2) / dn;

  // Var(psi) from indicator moments. Each pair of terms is written so that
  // swapping (p1, p2) leaves the floating-point result unchanged.
  const double v11 = p11 * (1.0 - p11);
  const double margins = (p2 * p2) * (p1 * (1.0 - p1)) + (p1 * p1) * (p2 * (1.0 - p2));
  const double cross = -2.0 * (p2 * (p11 * (1.0 - p1)) + p1 * (p11 * (1.0 - p2)));
  const double product = 2.0 * (p1 * p2) * (p11 - p1 * p2);
  double var = ((v11 + margins) + cross) + product;
  var = std::max(var, 0.0) * dn / (dn - 1.0);

  return {p11 - p1 * p2, std::sqrt(var / dn), n};
}

EstimateWithError delta_upper(std::span<const double> u, std::span<const double> v, double z1, double z2) {
  check_pair(u, v);
  std::size_t n11 = 0, n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool e1 = u[i] >= z1;
    const bool e2 = v[i] >= z2;
    n1 += e1;
    n2 += e2;
    n11 += e1 && e2;
  }
  return delta_from_counts(n11, n1, n2, u.size());
}

EstimateWithError delta_upper(const SampleBatch& batch, double z1, double z2) {
  return delta_upper(batch.u, batch.v, z1, z2);
}

EstimateWithError delta_lower(std::span<const double> u, std::span<const double> v, double z1, double z2) {
  check_pair(u, v);
  std::size_t n11 = 0, n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool e1 = u[i] <= z1;
    const bool e2 = v[i] <= z2;
    n1 += e1;
    n2 += e2;
    n11 += e1 && e2;
  }
  return delta_from_counts(n11, n1, n2, u.size());
}

EstimateWithError delta_lower(const SampleBatch& batch, double z1, double z2) {
  return delta_lower(batch.u, batch.v, z1, z2);
}

SampleBatch combine_replicas(const ReplicaBatch& batch, ComboMode mode) {
  const std::size_t n = batch.size();
  if (batch.u2.size() != n || batch.v1.size() != n || batch.v2.size() != n) {
    throw DimensionError("replica arrays must have equal length");
  }
  SampleBatch out;
  out.layer = batch.layer;
  out.tap = batch.tap;
  out.u.resize(n);
  out.v.resize(n);
  const double sign = mode == ComboMode::kSum ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.u[i] = batch.u1[i] + sign * batch.u2[i];
    out.v[i] = batch.v1[i] + sign * batch.v2[i];
  }
  return out;
}

EstimateWithError delta_combo(const ReplicaBatch& batch, double z1, double z2, ComboMode mode) {
  const SampleBatch combined = combine_replicas(batch, mode);
  return delta_upper(combined, z1, z2);
}

EstimateWithError covariance(std::span<const double> u, std::span<const double> v) {
  check_pair(u, v);
  const std::size_t n = u.size();
  const double dn = static_cast<double>(n);
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= dn;
  mv /= dn;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += (u[i] - mu) * (v[i] - mv);
  const double plug_in = sum / dn;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double psi = (u[i] - mu) * (v[i] - mv) - plug_in;
    ss += psi * psi;
  }
  return {sum / (dn - 1.0), std::sqrt(ss / (dn - 1.0) / dn), n};
}

EstimateWithError covariance(const SampleBatch& batch) { return covariance(batch.u, batch.v); }

double empirical_quantile(std::span<const double> values, double q) {
  if (values.empty()) throw EstimationError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile level must lie in [0, 1]");
  std::vector<double> copy(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(copy.size() - 1)));
  std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(k), copy.end());
  return copy[k];
}

PdProfile pd_profile(const Matrix& layer_samples, std::span<const double> z_values) {
  const auto n = static_cast<std::size_t>(layer_samples.rows());
  const auto units = static_cast<std::size_t>(layer_samples.cols());
  if (units < 2) throw DimensionError("PD profile needs at least 2 units");
  if (n < 2) throw EstimationError("PD profile needs at least 2 samples");

  const Eigen::Index last = layer_samples.cols() - 1;
  std::vector<char> all_nonneg(n), all_nonpos(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = layer_samples.row(static_cast<Eigen::Index>(i)).head(last);
    all_nonneg[i] = (row.array() >= 0.0).all();
    all_nonpos[i] = (row.array() <= 0.0).all();
  }

  auto frequency = [](std::size_t hits, std::size_t count) -> std::optional<EstimateWithError> {
    if (count == 0) return std::nullopt;
    const double p = static_cast<double>(hits) / static_cast<double>(count);
    return EstimateWithError{p, std::sqrt(p * (1.0 - p) / static_cast<double>(count)), count};
  };

  PdProfile profile;
  profile.z_values.assign(z_values.begin(), z_values.end());
  bool any = false;
  for (double z : z_values) {
    std::size_t right_count = 0, right_hits = 0, left_count = 0, left_hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = layer_samples(static_cast<Eigen::Index>(i), last);
      if (x >= z) {
        ++right_count;
        right_hits += all_nonneg[i] != 0;
      }
      if (x <= z) {
        ++left_count;
        left_hits += all_nonpos[i] != 0;
      }
    }
    profile.right_tail.push_back(frequency(right_hits, right_count));
    profile.left_tail.push_back(frequency(left_hits, left_count));
    any = any || right_count > 0 || left_count > 0;
  }
  if (!any) throw EstimationError("every conditioning event of the PD profile is empty");

  auto minimum = [](const std::vector<std::optional<EstimateWithError>>& cells) {
    std::optional<EstimateWithError> best;
    for (const auto& c : cells) {
      if (c && (!best || c->value < best->value)) best = c;
    }
    return best;
  };
  profile.min_right = minimum(profile.right_tail);
  profile.min_left = minimum(profile.left_tail);
  return profile;
}

double xi(const PriorSpec& prior, double z, double y) {
  if (!(y >= 0.0)) throw EstimationError("xi needs a non-negative norm");
  if (y == 0.0) return z <= 0.0 ? 1.0 : 0.0;
  const double t = z / y;
  if (!std::isfinite(t)) return t > 0.0 ? 0.0 : 1.0;
  switch (prior.family) {
    case PriorFamily::kGaussianIid:
    case PriorFamily::kGaussianEquicorrelated:
      return 0.5 * std::erfc(t / std::sqrt(2.0));
    case PriorFamily::kStudentT: {
      const boost::math::students_t dist(prior.nu);
      return boost::math::cdf(boost::math::complement(dist, t));
    }
  }
  throw EstimationError("xi has no closed form for this prior family");
}

EstimateWithError rao_blackwell_delta(const SampleBatch& batch, const PriorSpec& prior, double z1, double z2) {
  if (!batch.prev_norms) throw EstimationError("Rao-Blackwellised Delta needs previous-layer norms");
  if (batch.layer < 2) throw EstimationError("Rao-Blackwellised Delta needs layer >= 2");
  const auto& norms = *batch.prev_norms;
  std::vector<double> a(norms.size()), b(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) {
    a[i] = xi(prior, z1, norms[i]);
    b[i] = z2 == z1 ? a[i] : xi(prior, z2, norms[i]);
  }
  return covariance(a, b);
}

DeltaGrid delta_grid(const SampleBatch& batch, std::span<const double> z1_values,
                     std::span<const double> z2_values, Tail tail) {
  DeltaGrid grid = grid_from_samples(batch.u, batch.v, z1_values, z2_values, tail);
  grid.combo = Combo::kSingle;
  return grid;
}

DeltaGrid delta_grid(const ReplicaBatch& batch, std::span<const double> z1_values,
                     std::span<const double> z2_values, Tail tail, ComboMode mode) {
  const SampleBatch combined = combine_replicas(batch, mode);
  DeltaGrid grid = grid_from_samples(combined.u, combined.v, z1_values, z2_values, tail);
  grid.combo = mode == ComboMode::kSum ? Combo::kSumOfCopies : Combo::kDiffOfCopies;
  return grid;
}

double bootstrap_std_error(const SampleBatch& batch, const std::function<double(const SampleBatch&)>& statistic,
                           std::size_t resamples, const SeedSpec& seed) {
  if (resamples < 2) throw ConfigError("bootstrap needs at least 2 resamples");
  const std::size_t n = batch.size();
  if (n < 2) throw EstimationError("bootstrap needs at least 2 samples");
  SampleBatch draw;
  draw.layer = batch.layer;
  draw.tap = batch.tap;
  draw.u.resize(n);
  draw.v.resize(n);
  if (batch.prev_norms) draw.prev_norms.emplace(n);
  std::vector<double> stats(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng(seed.child("bootstrap").child(static_cast<std::uint64_t>(r)));
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      draw.u[i] = batch.u[j];
      draw.v[i] = batch.v[j];
      if (batch.prev_norms) (*draw.prev_norms)[i] = (*batch.prev_norms)[j];
    }
    stats[r] = statistic(draw);
  }
  double mean = 0.0;
  for (double s : stats) mean += s;
  mean /= static_cast<double>(resamples);
  double ss = 0.0;
  for (double s : stats) ss += (s - mean) * (s - mean);
  return std::sqrt(ss / static_cast<double>(resamples - 1));
}

}  // namespace bnndep
