#include <benchmark/benchmark.h>

#include "bnndep/experiments.hpp"
#include "bnndep/oracle.hpp"
#include "bnndep/sampler.hpp"

namespace {

void BM_SampleUnits(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const auto width = static_cast<std::size_t>(state.range(1));
  const auto config = bnndep::make_uniform_config(depth, width, 100, bnndep::ActivationKind::relu(),
                                                  bnndep::PriorSpec::gaussian_iid());
  const bnndep::Vector input = bnndep::generate_input(100, bnndep::SeedSpec(1));
  constexpr std::size_t kDraws = 10000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bnndep::sample_units(config, input, depth, {0, 1}, bnndep::Tap::kPreActivation, kDraws,
                                                  bnndep::SeedSpec(2), false, 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kDraws));
}
BENCHMARK(BM_SampleUnits)->ArgsProduct({{2, 4}, {2, 10}})->Unit(benchmark::kMillisecond);

void BM_WeightMatrix(benchmark::State& state) {
  bnndep::Rng rng{bnndep::SeedSpec(3)};
  const auto prior = state.range(0) == 0 ? bnndep::PriorSpec::gaussian_iid()
                                         : bnndep::PriorSpec::gaussian_equicorrelated(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(bnndep::sample_weight_matrix(prior, 100, 10, rng));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 1000));
}
BENCHMARK(BM_WeightMatrix)->Arg(0)->Arg(1);

void BM_Enumerate(benchmark::State& state) {
  bnndep::DiscreteNetSpec spec;
  spec.widths = {2, 4, 3};
  spec.input = {1.0, -0.5};
  for (auto _ : state) benchmark::DoNotOptimize(bnndep::enumerate_exact_delta(spec, 2, {0, 1}, 0.0, 0.0));
}
BENCHMARK(BM_Enumerate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
