#include <benchmark/benchmark.h>

#include <vector>

#include "blasso/lasso_distribution.hpp"
#include "blasso/rng.hpp"
#include "blasso/special_functions.hpp"

namespace {

using namespace blasso;

void BM_MillsRatio(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::mills_ratio_positive(x));
}
BENCHMARK(BM_MillsRatio)->Arg(0)->Arg(5)->Arg(50)->Arg(1000);

void BM_LogNormalCdf(benchmark::State& state) {
  const double x = -static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::log_normal_cdf(x));
}
BENCHMARK(BM_LogNormalCdf)->Arg(1)->Arg(40)->Arg(5000);

// Setup plus one draw, the pattern of a Gibbs coordinate update.
void BM_LassoDrawFresh(benchmark::State& state) {
  RngStream rng(1);
  double b = 1.0;
  for (auto _ : state) {
    b = -b;
    benchmark::DoNotOptimize(LassoDistribution(LassoParams{2.0, b, 3.0}).sample(rng));
  }
}
BENCHMARK(BM_LassoDrawFresh);

void BM_LassoSampleBatch(benchmark::State& state) {
  RngStream rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lasso_sample(n, LassoParams{100.0, 50.0, 200.0}, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LassoSampleBatch)->Arg(1000)->Arg(100000);

void BM_LassoQuantile(benchmark::State& state) {
  const LassoDistribution dist(LassoParams{2.0, 1.0, 3.0});
  double u = 0.0;
  for (auto _ : state) {
    u += 0.618033988749895;
    if (u >= 1.0) u -= 1.0;
    benchmark::DoNotOptimize(dist.quantile(u));
  }
}
BENCHMARK(BM_LassoQuantile);

}  // namespace

BENCHMARK_MAIN();
