#include <benchmark/benchmark.h>

#include "prtrp/bidp.hpp"
#include "prtrp/heuristics.hpp"
#include "prtrp/oracle.hpp"

namespace {

using namespace prtrp;

void BM_BidpExact(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 42);
  std::size_t labels = 0;
  for (auto _ : state) {
    const SolveReport rep = solve(inst);
    labels = rep.stats.labels_total;
    benchmark::DoNotOptimize(rep.objective);
  }
  state.counters["labels"] = static_cast<double>(labels);
}
BENCHMARK(BM_BidpExact)->Arg(10)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BidpHeuristic(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 42);
  SolverConfig cfg;
  cfg.mode = SolveMode::heuristic;
  cfg.theta_pct = 80;
  cfg.delta_pct = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg).objective);
}
BENCHMARK(BM_BidpHeuristic)->Arg(10)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BidpThreads(benchmark::State& state) {
  const Instance inst = generate_random(16, 42);
  SolverConfig cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg).objective);
}
BENCHMARK(BM_BidpThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_HeldKarp(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 42);
  const PrecedenceIndex index(inst);
  for (auto _ : state) benchmark::DoNotOptimize(held_karp_forward(inst, index).objective);
}
BENCHMARK(BM_HeldKarp)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const Instance inst = generate_random(static_cast<int>(state.range(0)), 42);
  const PrecedenceIndex index(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_distance(inst, index).objective);
    benchmark::DoNotOptimize(greedy_priority_distance(inst, index).objective);
  }
}
BENCHMARK(BM_Greedy)->Arg(16)->Arg(63);

void BM_DisruptedCount(benchmark::State& state) {
  const Instance inst = generate_random(63, 42);
  const PrecedenceIndex index(inst);
  VertexSet s = 0x5555555555555555ULL & index.all();
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.disrupted_count(s));
    s = (s * 6364136223846793005ULL + 1442695040888963407ULL) & index.all();
  }
}
BENCHMARK(BM_DisruptedCount);

}  // namespace

BENCHMARK_MAIN();
