#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "mfrac/clustering.hpp"
#include "mfrac/distance.hpp"
#include "mfrac/estimation.hpp"
#include "mfrac/geom_stats.hpp"
#include "mfrac/haar.hpp"
#include "mfrac/hurst_spec.hpp"
#include "mfrac/simulate.hpp"

namespace {

using namespace mfrac;

void BM_HaarKernel(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t = std::fmod(t + 0.61803398875, 1.0);
    benchmark::DoNotOptimize(haar_kernel(6, 17, 0.35, t));
  }
}
BENCHMARK(BM_HaarKernel);

void BM_Ghbmp(benchmark::State& state) {
  const int J = static_cast<int>(state.range(0));
  const auto grid = GridSpec::uniform(0.0, 1.0, 1025);
  const auto spec = HurstSpec::from_function([](double t) { return 0.4 - 0.25 * std::sin(6 * M_PI * t); });
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_ghbmp(grid, spec, J, SimSeed{++seed}));
  }
}
BENCHMARK(BM_Ghbmp)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Fgn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_fgn(n, 0.7, SimSeed{++seed}));
}
BENCHMARK(BM_Fgn)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMicrosecond);

void BM_EstimateHurst(benchmark::State& state) {
  const auto x = simulate_fbm(GridSpec::uniform(0.0, 1.0, (1 << 14) + 1), 0.5, SimSeed{1});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_hurst(x, EstimatorParams{}));
}
BENCHMARK(BM_EstimateHurst)->Unit(benchmark::kMicrosecond);

void BM_Hclust(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> rows(n, std::vector<double>(20));
  for (auto& r : rows) {
    for (double& v : r) v = normal(gen);
  }
  const auto d = distance_matrix(rows, DistanceMethod::euclidean());
  for (auto _ : state) benchmark::DoNotOptimize(hclust(d, n, Linkage::average));
}
BENCHMARK(BM_Hclust)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Rsi(benchmark::State& state) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> normal;
  std::vector<double> prices{100.0};
  for (int i = 0; i < 100000; ++i) prices.push_back(prices.back() + normal(gen));
  for (auto _ : state) benchmark::DoNotOptimize(rs_index(prices, 14));
}
BENCHMARK(BM_Rsi)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
