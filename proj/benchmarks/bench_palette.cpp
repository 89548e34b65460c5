#include <benchmark/benchmark.h>

#include "palette/adversaries.hpp"
#include "palette/algorithms.hpp"
#include "palette/charging.hpp"
#include "palette/graph_io.hpp"
#include "palette/harness.hpp"
#include "palette/nf_tree.hpp"
#include "palette/opt.hpp"
#include "palette/yao.hpp"

namespace {

using namespace palette;

void BM_FirstFitRandomTree(benchmark::State& state) {
  RngStream rng(1);
  const auto edges = harness::random_tree(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    FirstFit ff;
    benchmark::DoNotOptimize(run(ff, edges, 4).colored_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FirstFitRandomTree)->Arg(1 << 10)->Arg(1 << 14);

void BM_NextFitPathKiller(benchmark::State& state) {
  const auto seq = adversary::nf_path_killer(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    NextFit nf;
    benchmark::DoNotOptimize(run(nf, seq).colored_count());
  }
}
BENCHMARK(BM_NextFitPathKiller)->Arg(1000)->Arg(100000);

void BM_RandomParityYao(benchmark::State& state) {
  RngStream rng(2);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto y = adversary::yao_sample(6, rng);
    RandomParity rp(0.7236);
    benchmark::DoNotOptimize(run(rp, y.sequence(), seed++).colored_count());
  }
}
BENCHMARK(BM_RandomParityYao);

void BM_OptTree(benchmark::State& state) {
  RngStream rng(3);
  const Graph g = build_graph(harness::random_tree(static_cast<std::size_t>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(opt_tree(g, 3).opt_count);
}
BENCHMARK(BM_OptTree)->Arg(1 << 10)->Arg(1 << 14);

void BM_FfTreeCharge(benchmark::State& state) {
  RngStream rng(4);
  FirstFit ff;
  const Trace t = run(ff, harness::random_tree(static_cast<std::size_t>(state.range(0)), rng), 3);
  const auto w = opt_tree(t.graph, 3);
  for (auto _ : state) benchmark::DoNotOptimize(charging::ff_tree_charge(t, w).passed());
}
BENCHMARK(BM_FfTreeCharge)->Arg(64)->Arg(1024);

void BM_FairTreeChargeBunches(benchmark::State& state) {
  NextFit nf;
  const Trace t = run(nf, adversary::nf_tree_worstcase(4, static_cast<std::size_t>(state.range(0))));
  const auto w = opt_tree(t.graph, 4);
  for (auto _ : state) benchmark::DoNotOptimize(charging::fair_tree_charge(t, w).passed());
}
BENCHMARK(BM_FairTreeChargeBunches)->Arg(10)->Arg(100);

void BM_RpPathCharge(benchmark::State& state) {
  const auto seq = adversary::rp_strategy_oddeven(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(charging::rp_path_charge(seq, 0.7236).passed());
}
BENCHMARK(BM_RpPathCharge)->Arg(201)->Arg(3001);

}  // namespace
BENCHMARK_MAIN();
