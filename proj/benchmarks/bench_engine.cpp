#include <random>

#include <benchmark/benchmark.h>

#include "edeco/constants.hpp"
#include "edeco/decoherence/engine.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"

namespace {

using namespace edeco;

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = {normal(rng), normal(rng)};
  }
  return m;
}

// Two coupled modes with a dense (non-diagonal) drive and global dephasing.
struct Fixture {
  DensityMatrix rho0;
  EvolutionSpec spec;
};

Fixture make_fixture(std::size_t d) {
  std::mt19937_64 rng(7);
  const HilbertSpace space({{"a", d}, {"b", d}});
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  const Matrix q = Eigen::HouseholderQR<Matrix>(random_matrix(rng, n)).householderQ() * Matrix::Identity(n, n);
  const Eigen::VectorXd levels = Eigen::VectorXd::LinSpaced(n, -1.0, 1.0);
  const Operator h(space, constants::hbar * q * levels.cast<Complex>().asDiagonal() * q.adjoint());
  const Matrix a = random_matrix(rng, n);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  EvolutionSpec spec{h, DecoherenceSpec::global(0.1, h), {}, 1.0, Method::analytic, 0.0};
  return {DensityMatrix(space, rho), spec};
}

void BM_EvolveAnalytic(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_analytic(f.rho0, f.spec));
}
BENCHMARK(BM_EvolveAnalytic)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EvolveStepped(benchmark::State& state) {
  Fixture f = make_fixture(static_cast<std::size_t>(state.range(0)));
  f.spec.method = Method::stepped;
  f.spec.step = 0.09 / generator_norm_bound(f.spec);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_stepped(f.rho0, f.spec));
}
BENCHMARK(BM_EvolveStepped)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EigH(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(rng, static_cast<Eigen::Index>(n));
  const Operator h(HilbertSpace::single("x", n), 0.5 * (a + a.adjoint()));
  for (auto _ : state) benchmark::DoNotOptimize(eig_h(h));
}
BENCHMARK(BM_EigH)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMicrosecond);

void BM_Beamsplitter(benchmark::State& state) {
  const auto n_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(beamsplitter(n_max, "a", "b"));
}
BENCHMARK(BM_Beamsplitter)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
