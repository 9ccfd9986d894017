#include <benchmark/benchmark.h>

#include <vector>

#include "samestats/canonical.hpp"
#include "samestats/enumerate.hpp"
#include "samestats/generators.hpp"
#include "samestats/properties.hpp"

using namespace samestats;

namespace {

std::vector<Graph> random_graphs(int n, std::size_t count) {
  return sample({Model::kUn, n, count, 7}).graphs;
}

}  // namespace

static void BM_CanonicalForm(benchmark::State& state) {
  const auto gs = random_graphs(static_cast<int>(state.range(0)), 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_form(gs[i++ % gs.size()]));
  }
}
BENCHMARK(BM_CanonicalForm)->Arg(7)->Arg(9)->Arg(12);

static void BM_PropertyVector(benchmark::State& state) {
  const auto gs = random_graphs(static_cast<int>(state.range(0)), 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(property_vector(gs[i++ % gs.size()]));
  }
}
BENCHMARK(BM_PropertyVector)->Arg(7)->Arg(9);

static void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_codes(n).size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
