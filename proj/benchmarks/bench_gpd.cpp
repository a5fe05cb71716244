#include <cstdint>

#include <benchmark/benchmark.h>

#include "gpd/euler_difference.hpp"
#include "gpd/gpd_dist.hpp"
#include "gpd/series_identities.hpp"

namespace {

void BM_Pmf(benchmark::State& state) {
  const gpd::GpdParams params = gpd::GpdParams::make(2.0, 0.4);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gpd::pmf(params, n));
}
BENCHMARK(BM_Pmf)->Arg(5)->Arg(100)->Arg(5000);

void BM_Cdf(benchmark::State& state) {
  const gpd::GpdParams params = gpd::GpdParams::make(2.0, 0.4);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gpd::cdf(params, n));
}
BENCHMARK(BM_Cdf)->Arg(10)->Arg(1000);

void BM_SSeries(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(gpd::s_series(1.0, lambda, 1e-13));
}
BENCHMARK(BM_SSeries)->Arg(-25)->Arg(50)->Arg(90);

void BM_Rearrangement(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gpd::s_by_rearrangement(1.0, 0.2, 15));
}
BENCHMARK(BM_Rearrangement);

void BM_Sample(benchmark::State& state) {
  const gpd::GpdParams params = gpd::GpdParams::make(1.0, 0.5);
  const auto count = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gpd::sample(params, 42, count));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(1'000'000);

void BM_DifferenceExact(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const auto query = gpd::DifferenceQuery::make(gpd::parse_rational("-1/2"), gpd::parse_rational("1/3"), k, k);
  for (auto _ : state) benchmark::DoNotOptimize(gpd::difference_exact(query));
}
BENCHMARK(BM_DifferenceExact)->Arg(12)->Arg(64);

void BM_Lambda0(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gpd::lambda0(1e-15));
}
BENCHMARK(BM_Lambda0);

}  // namespace

BENCHMARK_MAIN();
