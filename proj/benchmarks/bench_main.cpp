#include <benchmark/benchmark.h>

#include "kforest/appendix_verifier.hpp"
#include "kforest/graph_core.hpp"
#include "kforest/matroid_union.hpp"
#include "kforest/mu_constants.hpp"
#include "kforest/reduced_f.hpp"
#include "kforest/special_fn.hpp"

using namespace kforest;

static void BM_LogTail(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::log_f_tail(3, x));
    x = x < 50.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_LogTail);

static void BM_ReducedObjective(benchmark::State& state) {
  double s0 = 0.6, s1 = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective::log_f_reduced(s0, s1));
    s1 = s1 < 0.35 ? s1 + 1e-3 : 0.2;
  }
}
BENCHMARK(BM_ReducedObjective);

static void BM_Mu2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mu::mu2(1e-9).value);
}
BENCHMARK(BM_Mu2)->Unit(benchmark::kMillisecond);

static void BM_KCore(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  const auto g = graphs::sample_gnp(n, 4.0 / n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(graphs::kcore(g, 3).core_vertices.size());
  state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_KCore)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_RankTwoForests(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  const auto g = graphs::sample_gnp(n, 4.0 / n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matroid::rank_k(g, 2));
}
BENCHMARK(BM_RankTwoForests)->Arg(1'000)->Arg(4'000)->Unit(benchmark::kMillisecond);

static void BM_MinWeightTwoTrees(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  const auto g = graphs::sample_complete_weights(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(matroid::min_weight_k_spanning_trees(g, 2).total_weight);
}
BENCHMARK(BM_MinWeightTwoTrees)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Orientation(benchmark::State& state) {
  const auto g = graphs::sample_gnp(20'000, 4.0 / 20'000, 4);
  const auto core = graphs::core_graph(g, graphs::kcore(g, 3));
  for (auto _ : state) benchmark::DoNotOptimize(matroid::orient_indegree_target(core, 2).flow_value);
}
BENCHMARK(BM_Orientation)->Unit(benchmark::kMillisecond);

static void BM_InteriorGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_region_E1(1.0 / 500.0, {1, false, false}).worst_value);
}
BENCHMARK(BM_InteriorGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
