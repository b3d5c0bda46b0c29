#include <benchmark/benchmark.h>

#include <complex>

#include "swdecay/adiabatic.hpp"
#include "swdecay/diffraction.hpp"
#include "swdecay/ladder.hpp"
#include "swdecay/quasienergy.hpp"
#include "swdecay/special_functions.hpp"

using namespace swdecay;

namespace {

ModelParams strong() {
  ModelParams p;
  p.rabi = 5.0;
  return p;
}

void BM_Wavefunctions(benchmark::State& state) {
  const ModelParams p = strong();
  double xi = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wavefunctions(p, xi, 2.0));
    xi += 1e-6;  // defeat value caching without changing the regime
  }
}
BENCHMARK(BM_Wavefunctions);

void BM_QuasienergyGrid(benchmark::State& state) {
  const ModelParams p = strong();
  for (auto _ : state) {
    std::complex<double> acc{};
    for (int i = 0; i < 1000; ++i) {
      acc += gamma_pm(p, kPi * i / 999).gamma_plus;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_QuasienergyGrid);

void BM_TotalPopulations(benchmark::State& state) {
  const ModelParams p = strong();
  QuadratureSpec spec;
  spec.abs_tol = 1e-10;
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_populations(p, t, spec));
  }
}
BENCHMARK(BM_TotalPopulations)->Arg(2)->Arg(50)->Arg(400);

void BM_BesselArray(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j_array(n_max, 0.5 * n_max));
  }
}
BENCHMARK(BM_BesselArray)->Arg(16)->Arg(128)->Arg(1024);

void BM_SpectrumDft(benchmark::State& state) {
  const ModelParams p = strong();
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(amplitudes(p, 2.0, n_max));
  }
}
BENCHMARK(BM_SpectrumDft)->Arg(10)->Arg(30);

void BM_ClosedFormOrder(benchmark::State& state) {
  const ModelParams p = strong();
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_m(p, 2.0, 2));
    benchmark::DoNotOptimize(partial_e(p, 2.0, 1));
  }
}
BENCHMARK(BM_ClosedFormOrder);

void BM_LadderIntegrate(benchmark::State& state) {
  const ModelParams p = strong();
  IntegrateOptions opt;
  opt.output_times = {static_cast<double>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p, opt.output_times.back(), opt));
  }
}
BENCHMARK(BM_LadderIntegrate)->Arg(2)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
