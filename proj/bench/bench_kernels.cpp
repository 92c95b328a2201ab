// Serial versus OpenMP timings of the parallel kernels.
#include <benchmark/benchmark.h>

#include "scatter/inversion.hpp"

using namespace scatter;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_AssembleLayers(benchmark::State& state) {
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::kite(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_layers(nodes, 5.0, true, mode(state)));
}

void BM_FarFieldOperators(benchmark::State& state) {
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::kite(), static_cast<int>(state.range(0)));
  const auto grid = FarFieldPattern::grid(128);
  for (auto _ : state) benchmark::DoNotOptimize(far_field_operators(nodes, 5.0, grid, mode(state)));
}

void BM_Linearize(benchmark::State& state) {
  const IterateState s = initial_circle(0.8, Vec2(0.1, 0.2), 25);
  const std::vector<Incidence> inc{{Vec2(1, 0), Vec2(0, 1)}, {Vec2(0, 1), Vec2(-1, 0)}};
  JacobianOptions opt;
  opt.n_q = static_cast<int>(state.range(0));
  opt.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(linearize(s, Dirichlet{}, 3.0, inc, opt));
}

}  // namespace

BENCHMARK(BM_AssembleLayers)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FarFieldOperators)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Linearize)->ArgsProduct({{64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
