#include <benchmark/benchmark.h>

#include "trp/dynamics.hpp"
#include "trp/profile.hpp"
#include "trp/search.hpp"

namespace {

void BM_ResonanceTimes(benchmark::State& state) {
  double eta = 4.6e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trp::resonance_times(4, eta));
    eta += 1e-12;
  }
}
BENCHMARK(BM_ResonanceTimes);

void BM_Evolve(benchmark::State& state) {
  const double eta = static_cast<double>(state.range(0)) * 1e-5;
  const auto p = trp::SweepProfile::from_dimensionless(4, 5.0, eta);
  for (auto _ : state)
    benchmark::DoNotOptimize(trp::evolve(p).final_probability());
}
BENCHMARK(BM_Evolve)->Arg(0)->Arg(46)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_FinalProbability(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(trp::final_probability(5.0, 4, 4.0e-3));
}
BENCHMARK(BM_FinalProbability)->Unit(benchmark::kMillisecond);

void BM_SweepRows(benchmark::State& state) {
  trp::SweepSpec spec;
  spec.n = 4;
  spec.lambda = 5.0;
  spec.eta_lo = 3.95e-3;
  spec.eta_hi = 4.04e-3;
  spec.steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(trp::sweep_eta(spec, 1).rows.size());
}
BENCHMARK(BM_SweepRows)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
