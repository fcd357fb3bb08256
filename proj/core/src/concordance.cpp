#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bnndep/estimators.hpp"

namespace bnndep {
namespace {

std::int64_t tied_pairs_in_sorted(std::span<const double> sorted) {
  std::int64_t pairs = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    pairs += t * (t - 1) / 2;
    i = j;
  }
  return pairs;
}

// Sorts `values` ascending and returns the number of strict inversions
// (i < j with values[i] > values[j]) of the original order.
std::int64_t sort_counting_inversions(std::vector<double>& values) {
  std::vector<double> buffer(values.size());
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < values.size(); width *= 2) {
    for (std::size_t lo = 0; lo < values.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, values.size());
      const std::size_t hi = std::min(lo + 2 * width, values.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (values[j] < values[i]) {
          inversions += static_cast<std::int64_t>(mid - i);
          buffer[k++] = values[j++];
        } else {
          buffer[k++] = values[i++];
        }
      }
      while (i < mid) buffer[k++] = values[i++];
      while (j < hi) buffer[k++] = values[j++];
    }
    values.swap(buffer);
  }
  return inversions;
}

std::vector<double> mid_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace

EstimateWithError kendall_tau(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("u and v must have the same length");
  const std::size_t n = u.size();
  if (n < 2) throw EstimationError("Kendall tau needs at least 2 samples");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (u[a] != u[b]) return u[a] < u[b];
    return v[a] < v[b];
  });

  std::int64_t ties_u = 0, ties_joint = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && u[order[j]] == u[order[i]]) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    ties_u += t * (t - 1) / 2;
    // Inside a u-tie group v is sorted, so joint ties are adjacent runs.
    std::size_t k = i;
    while (k < j) {
      std::size_t l = k + 1;
      while (l < j && v[order[l]] == v[order[k]]) ++l;
      const auto s = static_cast<std::int64_t>(l - k);
      ties_joint += s * (s - 1) / 2;
      k = l;
    }
    i = j;
  }

  std::vector<double> vs(n);
  for (std::size_t k = 0; k < n; ++k) vs[k] = v[order[k]];
  const std::int64_t discordant = sort_counting_inversions(vs);
  const std::int64_t ties_v = tied_pairs_in_sorted(vs);

  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t total = nn * (nn - 1) / 2;
  const std::int64_t untied = total - ties_u - ties_v + ties_joint;
  const std::int64_t score = untied - 2 * discordant;

  const double dn = static_cast<double>(n);
  const double se = std::sqrt(2.0 * (2.0 * dn + 5.0) / (9.0 * dn * (dn - 1.0)));
  return {static_cast<double>(score) / static_cast<double>(total), se, n};
}

EstimateWithError kendall_tau(const SampleBatch& batch) { return kendall_tau(batch.u, batch.v); }

EstimateWithError spearman_rho(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DimensionError("u and v must have the same length");
  const std::size_t n = u.size();
  if (n < 2) throw EstimationError("Spearman rho needs at least 2 samples");
  const std::vector<double> ru = mid_ranks(u);
  const std::vector<double> rv = mid_ranks(v);
  const double mean = 0.5 * (static_cast<double>(n) + 1.0);
  double suv = 0.0, suu = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = ru[i] - mean;
    const double b = rv[i] - mean;
    suv += a * b;
    suu += a * a;
    svv += b * b;
  }
  if (suu == 0.0 || svv == 0.0) throw EstimationError("Spearman rho is undefined for a constant coordinate");
  const double rho = std::clamp(suv / std::sqrt(suu * svv), -1.0, 1.0);
  return {rho, 1.0 / std::sqrt(static_cast<double>(n) - 1.0), n};
}

EstimateWithError spearman_rho(const SampleBatch& batch) { return spearman_rho(batch.u, batch.v); }

}  // namespace bnndep
