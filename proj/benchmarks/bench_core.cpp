#include <benchmark/benchmark.h>

#include <cotc/cotc.hpp>

using namespace cotc;

namespace {

const BuckParams kBuck{0.5, 2e-6, 20e-6, 0.02, 0.0, 5.0, 0.0};

void BM_Expm(benchmark::State& state) {
  const auto m = build_model(kBuck, Scheme::VCotc);
  for (auto _ : state) benchmark::DoNotOptimize(expm(m.A1, 3e-6));
}
BENCHMARK(BM_Expm);

void BM_Eigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = std::sin(1.0 + 3.0 * i + 7.0 * j);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(a));
}
BENCHMARK(BM_Eigenvalues)->Arg(2)->Arg(4)->Arg(8);

void BM_Linearize(benchmark::State& state) {
  const auto m = build_model(kBuck, Scheme::VCotc);
  const auto ss = steady_state_at(m, 1.2e-6, 3e-6, {5.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(linearize(m, ss, 0.0));
}
BENCHMARK(BM_Linearize);

void BM_StepCycle(benchmark::State& state) {
  const auto m = build_model(kBuck, Scheme::VCotc);
  const RampSpec ramp{9500.0, 1.2e-6};
  const Inputs u{5.0, control_voltage_for_period(m, ramp, 3e-6, 5.0)};
  const auto ss = steady_state_at(m, 1.2e-6, 3e-6, u);
  for (auto _ : state) benchmark::DoNotOptimize(step_cycle(m, ramp, ss.x0_0, u, 3e-6));
}
BENCHMARK(BM_StepCycle);

void BM_HbPdbSplot(benchmark::State& state) {
  const int nh = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hb_pdb_splot(kBuck, Scheme::VCotc, 1.2e-6, 3e-6, nh));
}
BENCHMARK(BM_HbPdbSplot)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
