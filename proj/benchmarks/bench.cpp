#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "vodplace/adaptive.hpp"
#include "vodplace/allocate.hpp"
#include "vodplace/analytic.hpp"
#include "vodplace/model.hpp"

using namespace vodplace;

namespace {

Topology& paper_topology() {
  static Topology t = sample_topology(50, 40000, 4, 1);
  return t;
}

Demand& paper_demand() {
  static Demand d = make_demand(2000, 0.8, 40000, 1);
  return d;
}

void BM_SampleTopology(benchmark::State& state) {
  const int peers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_topology(50, peers, 4, 1));
  }
  state.SetItemsProcessed(state.iterations() * peers);
}
BENCHMARK(BM_SampleTopology)->Arg(1000)->Arg(40000);

void BM_GreedyPeel(benchmark::State& state) {
  const int requesters = static_cast<int>(state.range(0));
  auto t = sample_topology(50, requesters, 4, 1);
  std::vector<int> ids(requesters);
  std::iota(ids.begin(), ids.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_peel(t, ids, 50));
  }
}
BENCHMARK(BM_GreedyPeel)->Arg(100)->Arg(2000)->Arg(40000);

void BM_AwUpperBound(benchmark::State& state) {
  for (auto _ : state) {
    for (int c = 0; c <= 50; ++c)
      benchmark::DoNotOptimize(aw_upper_bound(50, 4, 2000, c));
  }
}
BENCHMARK(BM_AwUpperBound);

void BM_OptimizeAlpha(benchmark::State& state) {
  auto p = zipf_popularity(2000, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_alpha(p, 4, 100.0));
  }
}
BENCHMARK(BM_OptimizeAlpha);

void BM_AdaptiveWhole(benchmark::State& state) {
  const auto& t = paper_topology();
  const auto& d = paper_demand();
  for (auto _ : state) {
    benchmark::DoNotOptimize(adaptive_whole_allocate(t, d, 5000.0));
  }
}
BENCHMARK(BM_AdaptiveWhole)->Unit(benchmark::kMillisecond);

void BM_HybridAllocate(benchmark::State& state) {
  const auto& t = paper_topology();
  const auto& d = paper_demand();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hybrid_allocate(t, d, 5000.0));
  }
}
BENCHMARK(BM_HybridAllocate)->Unit(benchmark::kMillisecond);

void BM_EvaluatePlacement(benchmark::State& state) {
  const auto& t = paper_topology();
  const auto& d = paper_demand();
  auto r = fixed_fractional_allocate(t, d, 5000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_placement(t, d, r.placement));
  }
  state.SetItemsProcessed(state.iterations() * t.num_peers());
}
BENCHMARK(BM_EvaluatePlacement)->Unit(benchmark::kMillisecond);

void BM_PrimalDualIters(benchmark::State& state) {
  auto t = sample_topology(20, 1000, 4, 1);
  auto d = make_demand(50, 0.8, 1000, 1);
  SolverConfig cfg;
  cfg.max_iters = 1000;
  cfg.tol_objective = 0.0;  // never converge: measure raw iteration cost
  cfg.trailing_window = 1 << 30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(primal_dual(t, d.requests, 50, 100.0, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.max_iters);
}
BENCHMARK(BM_PrimalDualIters)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
