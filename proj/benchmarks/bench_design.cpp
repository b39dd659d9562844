#include <benchmark/benchmark.h>

#include "edeco/sensitivity/design.hpp"

namespace {

using namespace edeco;

SpeciesParams strontium_like() {
  SpeciesParams p;
  p.gamma_sp = 1e-3;
  p.delta_e = 1.0;
  p.mass = 87.0 * 1.66053906660e-27;
  p.kappa = 1e-17;
  p.k3 = 1e-41;
  return p;
}

void BM_DesignClosedForm(benchmark::State& state) {
  const SpeciesParams p = strontium_like();
  for (auto _ : state) benchmark::DoNotOptimize(ghz_design(p));
}
BENCHMARK(BM_DesignClosedForm);

// Grid oracle cost grows with the square of the points per axis.
void BM_DesignGrid(benchmark::State& state) {
  const SpeciesParams p = strontium_like();
  const DesignResult exact = ghz_design(p);
  const auto per_decade = static_cast<int>(state.range(0));
  const auto n_grid = log_grid(exact.n_opt, 8.0, per_decade);
  const auto v_grid = log_grid(exact.v_opt, 8.0, per_decade);
  for (auto _ : state) benchmark::DoNotOptimize(ghz_design_grid(p, n_grid, v_grid));
}
BENCHMARK(BM_DesignGrid)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
