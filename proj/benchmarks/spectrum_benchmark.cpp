#include <algorithm>
#include <random>
#include <set>

#include <benchmark/benchmark.h>

#include "ktn/mstree.hpp"
#include "ktn/spectrum.hpp"

namespace {

using namespace ktn;

Network synthetic(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> potential(0.0, 2.0);
  std::uniform_real_distribution<double> height(0.2, 2.5);
  std::vector<StateRecord> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i] = {potential(rng), 1.0, i + 1};
  std::set<std::pair<StateIndex, StateIndex>> pairs;
  for (StateIndex i = 1; i < n; ++i) {
    std::uniform_int_distribution<StateIndex> pick(i > 8 ? i - 8 : 0, i - 1);
    pairs.emplace(pick(rng), i);
  }
  std::uniform_int_distribution<StateIndex> any(0, static_cast<StateIndex>(n - 1));
  while (pairs.size() < m) {
    const StateIndex a = any(rng);
    const StateIndex b = any(rng);
    if (a != b) pairs.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<EdgeRecord> edges;
  for (const auto& [a, b] : pairs)
    edges.push_back({a, b, std::max(states[a].potential, states[b].potential) + height(rng), 1.0});
  return Network(std::move(states), std::move(edges));
}

SpectrumOptions options() {
  SpectrumOptions o;
  o.rel_tol = 1e-14;
  return o;
}

void BM_Kruskal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Network net = synthetic(n, 2 * n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(kruskal(net));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Kruskal)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_FullSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Network net = synthetic(n, 2 * n, 7);
  for (auto _ : state) {
    const SpanningForest mst = kruskal(net);
    benchmark::DoNotOptimize(run_spectrum(net, mst, options()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FullSpectrum)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ThresholdSpectrum(benchmark::State& state) {
  const Network net = synthetic(100'000, 200'000, 7);
  const SpanningForest mst = kruskal(net);
  SpectrumOptions o = options();
  o.min_delta = 1.5;
  for (auto _ : state) benchmark::DoNotOptimize(run_spectrum(net, mst, o));
}
BENCHMARK(BM_ThresholdSpectrum)->Unit(benchmark::kMillisecond);

void BM_Genericness(benchmark::State& state) {
  const Network net = synthetic(100'000, 200'000, 7);
  for (auto _ : state) benchmark::DoNotOptimize(validate_genericness(net, {1e-14}));
}
BENCHMARK(BM_Genericness)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
