#include <benchmark/benchmark.h>

#include "nudirac/specfun.hpp"
#include "nudirac/spectra.hpp"
#include "nudirac/verify.hpp"

#ifdef NUDIRAC_BENCH_SCAN
#include "cli/scan.hpp"
#endif

using namespace nudirac;

static void BM_Laguerre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::laguerre(n, 1.5, z));
    z += 1e-9;
  }
}
BENCHMARK(BM_Laguerre)->Arg(2)->Arg(10)->Arg(40);

static void BM_Jacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::jacobi(n, 0.4, -0.7, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Jacobi)->Arg(2)->Arg(10)->Arg(40);

static void BM_EnergyViaNu(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? MassKind::ExponentialRising : MassKind::SigmoidSaturating;
  const auto m = MassModel::make(kind, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(energy_via_nu(m, 3));
}
BENCHMARK(BM_EnergyViaNu)->Arg(0)->Arg(1);

static void BM_ResidualOdeZ(benchmark::State& state) {
  const auto m = MassModel::make(MassKind::SigmoidSaturating, 1.0, 1.0);
  const auto lv = energy_via_nu(m, 3).level;
  const auto zs = default_z_grid(m);
  for (auto _ : state) benchmark::DoNotOptimize(residual_ode_z(m, lv, zs));
}
BENCHMARK(BM_ResidualOdeZ);

static void BM_ResidualDirac(benchmark::State& state) {
  const auto m = MassModel::make(MassKind::ExponentialRising, 1.0, 1.0);
  const auto lv = energy_via_nu(m, 3).level;
  const auto samples = sample_x_grid(m, lv, default_x_grid(m));
  for (auto _ : state) benchmark::DoNotOptimize(residual_dirac_system(m, samples, lv.e_plus));
}
BENCHMARK(BM_ResidualDirac);

#ifdef NUDIRAC_BENCH_SCAN
static void BM_Scan(benchmark::State& state) {
  cli::ScanSpec spec;
  spec.draws = 1000;
  const auto draws = cli::generate_draws(spec, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cli::evaluate_draws(draws, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
#endif
BENCHMARK_MAIN();
