#include <benchmark/benchmark.h>

#include <random>

#include "qlat/bands.hpp"
#include "qlat/cooling.hpp"
#include "qlat/doublewell.hpp"
#include "qlat/eigensolver.hpp"

using namespace qlat;

static void BM_HermitianEigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  const Eigen::MatrixXcd h = a + a.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(h));
  state.SetComplexityN(n);
}
BENCHMARK(BM_HermitianEigen)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNCubed);

static void BM_CesiumBandsAtZero(benchmark::State& state) {
  DoubleWellConfig c = DoubleWellConfig::cesium_preset();
  c.n_max = static_cast<int>(state.range(0));
  const OperatorField u = double_well_potential(c);
  for (auto _ : state) benchmark::DoNotOptimize(band_structure(u, {0.0}, {c.n_max, 3, true}));
}
BENCHMARK(BM_CesiumBandsAtZero)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_CoolingSchedule(benchmark::State& state) {
  CoolingConfig c;
  c.schedule = descending_schedule(5);
  const BlockDensityMatrix rho = thermal_initial(c.q_boltzmann, c.n_max);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(c, rho));
}
BENCHMARK(BM_CoolingSchedule)->Unit(benchmark::kMillisecond);

static void BM_PropagatorStep(benchmark::State& state) {
  DoubleWellConfig c = state.range(0) ? DoubleWellConfig::cesium_preset() : DoubleWellConfig::spin_half_preset();
  const Propagator p(c);
  CVec psi = p.eigenvectors().col(0);
  DoubleWellConfig mid = c;
  mid.b_z = 0.1;
  for (auto _ : state) {
    psi = p.step(psi, 1e-3, mid, 1e-3);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_PropagatorStep)->Arg(0)->Arg(1);
BENCHMARK_MAIN();
