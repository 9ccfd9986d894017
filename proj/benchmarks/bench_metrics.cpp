#include <benchmark/benchmark.h>

#include <vector>

#include "samestats/linalg.hpp"
#include "samestats/metrics.hpp"
#include "samestats/rng.hpp"

using namespace samestats;

static void BM_SymEig10(benchmark::State& state) {
  Rng rng(1);
  std::vector<double> a(100);
  for (double& x : a) x = rng.uniform(-1.0, 1.0);
  const auto m = SymMatrix::from_dense(10, a);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(m).values.front());
}
BENCHMARK(BM_SymEig10);

static void BM_GaussianKl(benchmark::State& state) {
  Rng rng(2);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(state.range(0)), std::vector<double>(10));
  for (auto& r : rows)
    for (double& x : r) x = rng.uniform();
  const auto ds = Dataset::from_rows(10, rows);
  const auto shifted = Dataset::from_rows(10, std::vector<std::vector<double>>(rows.rbegin(), rows.rend() - 1));
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_kl(shifted, ds));
}
BENCHMARK(BM_GaussianKl)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
