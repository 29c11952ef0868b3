#include <benchmark/benchmark.h>

#include "popbranch/arborescence.hpp"
#include "popbranch/factor.hpp"
#include "popbranch/generators.hpp"
#include "popbranch/mixed.hpp"
#include "popbranch/popularity.hpp"
#include "popbranch/solver.hpp"

using namespace popbranch;

namespace {

RootedInstance strict_instance(int n) { return augment_root(random_instance(n, 10 * n, PrefModel::strict(), 7)); }

void BM_Solve(benchmark::State& state) {
  const auto rooted = strict_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(popular_arborescence(rooted));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(25, 400)->Complexity();

void BM_MinMargin(benchmark::State& state) {
  const auto rooted = augment_root(random_instance(static_cast<int>(state.range(0)), 10 * state.range(0),
                                                   PrefModel::weak(3), 11));
  for (auto _ : state) benchmark::DoNotOptimize(min_margin_arborescence(rooted));
}
BENCHMARK(BM_MinMargin)->RangeMultiplier(2)->Range(25, 200);

void BM_Margin(benchmark::State& state) {
  const auto rooted = strict_instance(static_cast<int>(state.range(0)));
  Branching a{std::vector<int>(rooted.graph().num_nodes(), -1)};
  for (int v : rooted.voters()) a.in_edge[v] = rooted.root_edge(v);
  for (auto _ : state) benchmark::DoNotOptimize(unpopularity_margin(rooted, a));
}
BENCHMARK(BM_Margin)->RangeMultiplier(2)->Range(25, 400);

void BM_MinCostArborescence(benchmark::State& state) {
  const auto rooted = strict_instance(static_cast<int>(state.range(0)));
  CostedGraph g{to_digraph(rooted), std::vector<std::int64_t>(rooted.graph().num_edges())};
  for (std::size_t e = 0; e < g.cost.size(); ++e) g.cost[e] = static_cast<std::int64_t>((e * 2654435761u) % 17);
  for (auto _ : state) benchmark::DoNotOptimize(min_cost_arborescence(g));
}
BENCHMARK(BM_MinCostArborescence)->RangeMultiplier(2)->Range(25, 400);

void BM_LowFactor(benchmark::State& state) {
  const auto rooted = augment_root(tight_factor_instance(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(low_factor_arborescence(rooted));
}
BENCHMARK(BM_LowFactor)->DenseRange(4, 10, 2);

void BM_Mixed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rooted = augment_root(random_instance(n, 2 * n, PrefModel::strict(), 5));
  for (auto _ : state) benchmark::DoNotOptimize(popular_mixed_branching(rooted));
}
BENCHMARK(BM_Mixed)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
