#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <variant>

#include "chemotaxis/dynamics.hpp"
#include "chemotaxis/elliptic.hpp"
#include "chemotaxis/regime.hpp"
#include "chemotaxis/scenarios.hpp"

using namespace chemotaxis;

namespace {

Field bump(const Grid& g) {
  return Field::from_function(g, [](double x, double y) {
    return 1.0 + 0.5 * std::cos(std::numbers::pi * x) * std::cos(std::numbers::pi * y);
  });
}

Grid grid_for(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return state.range(1) == 1 ? Grid::line(1.0, n) : Grid::rectangle(1.0, 1.0, n, n);
}

void BM_ResolventApply(benchmark::State& state) {
  const Field u = bump(grid_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_apply(u, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(u.size()));
}
BENCHMARK(BM_ResolventApply)->Args({256, 1})->Args({4096, 1})->Args({64, 2})->Args({256, 2});

void BM_Step(benchmark::State& state) {
  const Grid g = grid_for(state);
  ModelParams p = make_params({{"chi0", "2"}, {"beta", "1"}, {"a", "1"}, {"b", "1"}}, g.dim());
  const SimState s = make_initial_state(bump(g), p);
  const StepperConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(step(s, 1e-4, p, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_Step)->Args({256, 1})->Args({4096, 1})->Args({64, 2})->Args({256, 2});

void BM_Classify(benchmark::State& state) {
  const ModelParams p = make_params({{"chi0", "0.002"}, {"a", "1"}, {"b", "0.001"}}, 3);
  const auto c = EllipticConstantModel::user(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify(p, c));
}
BENCHMARK(BM_Classify);

}  // namespace

BENCHMARK_MAIN();
