#include <numbers>

#include <benchmark/benchmark.h>

#include "qoc/pmp.hpp"
#include "qoc/special.hpp"

using namespace qoc;

namespace {

ReservoirParams cell(double kBT, double r) {
  ReservoirParams p;
  p.kBT = kBT;
  p.r = r;
  return p;
}

const BlochVector kStart{std::numbers::sqrt3 / 2.0, -std::numbers::sqrt2 / 4.0,
                         -std::numbers::sqrt2 / 4.0};

void bm_hyp2f1(benchmark::State& state) {
  const double q = state.range(0) / 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(hyp2f1({0.5, 0.3}, {1.0, 0.0}, {1.5, 0.3}, {q, 0.0}));
}
BENCHMARK(bm_hyp2f1)->Arg(10)->Arg(50)->Arg(90);

void bm_delta_exact(benchmark::State& state) {
  const ReservoirParams p = cell(state.range(0) == 0 ? 0.3 : 300.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(delta_exact(2.0, p));
}
BENCHMARK(bm_delta_exact)->Arg(0)->Arg(1);

void bm_delta_quadrature(benchmark::State& state) {
  const ReservoirParams p = cell(state.range(0) == 0 ? 0.3 : 300.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(delta_quadrature(2.0, p));
}
BENCHMARK(bm_delta_quadrature)->Arg(0)->Arg(1);

void bm_coefficient_trace(benchmark::State& state) {
  const TimeGrid grid{0.0, 20.0, static_cast<int>(state.range(0))};
  const ReservoirParams p = cell(300.0, 0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(coefficient_trace(grid, p, CoefficientMethod::Exact));
}
BENCHMARK(bm_coefficient_trace)->Arg(400)->Arg(4000);

void bm_integrate(benchmark::State& state) {
  const TimeGrid grid{0.0, 20.0, static_cast<int>(state.range(0))};
  const ReservoirParams p = cell(300.0, 0.1);
  const CoefficientTrace coeffs = coefficient_trace(grid, p, CoefficientMethod::Exact);
  const ControlField zero = ControlField::zero(grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(kStart, zero, coeffs, grid, p.omega0));
}
BENCHMARK(bm_integrate)->Arg(1000)->Arg(4000);

void bm_fbsm(benchmark::State& state) {
  const TimeGrid grid{0.0, 20.0, 1000};
  const ReservoirParams p = cell(300.0, 0.1);
  const CoefficientTrace coeffs = coefficient_trace(grid, p, CoefficientMethod::Exact);
  SweepConfig config;
  config.max_iters = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_fbsm(kStart, coeffs, grid, {}, config, p.omega0));
}
BENCHMARK(bm_fbsm)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
