// Serial references against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "ramsey0/copies.hpp"
#include "ramsey0/corpus.hpp"
#include "ramsey0/decide.hpp"
#include "ramsey0/experiments.hpp"
#include "ramsey0/hypergraph.hpp"

using namespace ramsey0;

namespace {

Hypergraph host(int ell, Vertex n, const char* p) { return sample({ell, n, ProbabilitySpec::parse(p), 5}); }

void BM_CopiesSerial(benchmark::State& state) {
  auto g = std::make_shared<const Hypergraph>(host(2, static_cast<Vertex>(state.range(0)), "n^(-2/5)"));
  const auto k4 = complete_hypergraph(2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_copies_serial(g, k4).num_copies());
}

void BM_CopiesParallel(benchmark::State& state) {
  auto g = std::make_shared<const Hypergraph>(host(2, static_cast<Vertex>(state.range(0)), "n^(-2/5)"));
  const auto k4 = complete_hypergraph(2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_copies(g, k4).num_copies());
}

void BM_DecideDoubledK5(benchmark::State& state) {
  SearchLimits limits;
  limits.parallel = state.range(0) != 0;
  limits.counting_bound = false;
  const auto idx = enumerate_copies(k5_3_doubled(), complete_hypergraph(3, 4));
  for (auto _ : state) benchmark::DoNotOptimize(decide_anti_ramsey_bounded(idx, 2, limits).arrow);
}

void BM_DecideRamseyK6(benchmark::State& state) {
  SearchLimits limits;
  limits.parallel = state.range(0) != 0;
  const auto idx = enumerate_copies(complete_hypergraph(2, 6), complete_hypergraph(2, 3));
  for (auto _ : state) benchmark::DoNotOptimize(decide_ramsey(idx, 2, limits).arrow);
}

void BM_Sample(benchmark::State& state) {
  const SampleSpec spec{3, static_cast<Vertex>(state.range(0)), ProbabilitySpec::parse("1/10*n^(-1/3)"), 11};
  for (auto _ : state) benchmark::DoNotOptimize(sample(spec).num_edges());
}

void BM_GenerateConnected(benchmark::State& state) {
  GenerateOptions o;
  o.max_vertices = static_cast<Vertex>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_connected(o).size());
}

}  // namespace

BENCHMARK(BM_CopiesSerial)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CopiesParallel)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideDoubledK5)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideRamseyK6)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sample)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateConnected)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
