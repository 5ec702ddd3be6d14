#include <benchmark/benchmark.h>

#include "percfpp/bond_percolation.hpp"
#include "percfpp/components.hpp"
#include "percfpp/fpp.hpp"
#include "percfpp/lattice.hpp"

using namespace percfpp;

static void BM_BuildGraph(benchmark::State& state) {
  const double side = static_cast<double>(state.range(0));
  const auto cloud = sample_poisson(Region::square(side), 1.75, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(cloud, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cloud.size()));
}
BENCHMARK(BM_BuildGraph)->Arg(30)->Arg(60)->Arg(120);

static void BM_LabelComponents(benchmark::State& state) {
  const auto g = build_graph(sample_poisson(Region::square(60), 1.75, 2), 1.0);
  const auto mask = thin_links(g, LinkProbability::constant(0.5), 2);
  for (auto _ : state) benchmark::DoNotOptimize(label_components(g, mask));
}
BENCHMARK(BM_LabelComponents);

static void BM_Crossing(benchmark::State& state) {
  const auto g = build_graph(sample_poisson(Region::square(40), 1.6, 3), 1.0);
  const CrossingSpec spec{Region::square(40), CrossingDirection::left_right};
  for (auto _ : state) benchmark::DoNotOptimize(crossing_exists(g, spec));
}
BENCHMARK(BM_Crossing);

static void BM_CoupledReplicate(benchmark::State& state) {
  const std::vector<double> levels{1.0, 1.4, 1.8};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_coupled_replicate(LinkProbability::constant(1), 40, 4.0, levels, seed++));
  }
}
BENCHMARK(BM_CoupledReplicate);

static void BM_ShortestPathTree(benchmark::State& state) {
  const auto g = build_graph(sample_poisson(Region::square(60), 1.75, 4), 1.0);
  const auto field = sample_delay_field(g, OnOffSpec::exponential(0.5, 2), 0.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path_tree(g, field, 0));
}
BENCHMARK(BM_ShortestPathTree);

static void BM_DelayField(benchmark::State& state) {
  const auto g = build_graph(sample_poisson(Region::square(60), 1.75, 5), 1.0);
  const double tau = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_delay_field(g, OnOffSpec::exponential(1, 2), tau, 5));
}
BENCHMARK(BM_DelayField)->Arg(0)->Arg(10);

static void BM_Circuits(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_surrounding_circuits(m));
}
BENCHMARK(BM_Circuits)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
