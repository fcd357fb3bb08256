#include <benchmark/benchmark.h>

#include <boost/random/normal_distribution.hpp>

#include "bnndep/estimators.hpp"
#include "bnndep/oracle.hpp"

namespace {

bnndep::SampleBatch gaussian_batch(std::size_t n) {
  bnndep::Rng rng{bnndep::SeedSpec(1)};
  boost::random::normal_distribution<double> normal;
  bnndep::SampleBatch b;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = normal(rng);
    b.u.push_back(a);
    b.v.push_back(0.3 * a + normal(rng));
  }
  return b;
}

void BM_KendallFast(benchmark::State& state) {
  const auto b = gaussian_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bnndep::kendall_tau(b.u, b.v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallFast)->RangeMultiplier(4)->Range(256, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_KendallBrute(benchmark::State& state) {
  const auto b = gaussian_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bnndep::brute_force_tau(b.u, b.v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallBrute)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity(benchmark::oNSquared);

void BM_Spearman(benchmark::State& state) {
  const auto b = gaussian_batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bnndep::spearman_rho(b.u, b.v));
}
BENCHMARK(BM_Spearman)->Arg(100000);

// 41 x 41 grid at n = 1e5, the sweep's per-cell workload
void BM_DeltaGrid(benchmark::State& state) {
  const auto b = gaussian_batch(static_cast<std::size_t>(state.range(0)));
  const auto axis = bnndep::make_axis(-1.0, 1.0, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(bnndep::delta_grid(b, axis, axis));
}
BENCHMARK(BM_DeltaGrid)->Args({100000, 41})->Args({100000, 201})->Unit(benchmark::kMillisecond);

// Same grid cell by cell, for comparison
void BM_DeltaPointwise(benchmark::State& state) {
  const auto b = gaussian_batch(100000);
  const auto axis = bnndep::make_axis(-1.0, 1.0, 41);
  for (auto _ : state) {
    for (double z1 : axis) {
      for (double z2 : axis) benchmark::DoNotOptimize(bnndep::delta_upper(b, z1, z2));
    }
  }
}
BENCHMARK(BM_DeltaPointwise)->Unit(benchmark::kMillisecond);

}  // namespace
