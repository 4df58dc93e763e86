// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "darkcat/cx.hpp"
#include "darkcat/dark_states.hpp"
#include "darkcat/liouville.hpp"
#include "darkcat/spin.hpp"
#include "darkcat/stabilization.hpp"

namespace {

using namespace darkcat;

StabilizationConfig stab(int fg) {
  StabilizationConfig cfg;
  cfg.fg = whole(fg);
  return cfg;
}

void BM_ClebschGordanTable(benchmark::State& state) {
  const HalfInt fg = half(static_cast<int>(state.range(0)));
  const HalfInt fe = fg - whole(1);
  for (auto _ : state) {
    double sum = 0.0;
    for (int i = 0; i < fg.dim(); ++i) {
      for (int q = -1; q <= 1; ++q) {
        const HalfInt m = basis_m(fg, i);
        const HalfInt me = m + whole(q);
        if (me.twice() > fe.twice() || me.twice() < -fe.twice()) continue;
        sum += clebsch_gordan(fg, m, q, fe, me);
      }
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_ClebschGordanTable)->DenseRange(2, 12, 2);

void BM_DarkStatesNull(benchmark::State& state) {
  DriveConfig cfg;
  cfg.fg = whole(static_cast<int>(state.range(0)));
  cfg.omega = {{0.3, 0.8}, {1.1, -0.2}, {-0.5, 0.4}};
  cfg.detuning = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(find_dark_states_null(cfg));
}
BENCHMARK(BM_DarkStatesNull)->Arg(2)->Arg(4)->Arg(6);

void BM_DarkStatesRotation(benchmark::State& state) {
  DriveConfig cfg;
  cfg.fg = whole(static_cast<int>(state.range(0)));
  cfg.omega = {{0.3, 0.8}, {1.1, -0.2}, {-0.5, 0.4}};
  cfg.detuning = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(find_dark_states_rotation(cfg));
}
BENCHMARK(BM_DarkStatesRotation)->Arg(2)->Arg(4)->Arg(6);

void BM_StabilizationLindbladian(benchmark::State& state) {
  const StabilizationConfig cfg = stab(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stabilization_lindbladian(cfg));
}
BENCHMARK(BM_StabilizationLindbladian)->DenseRange(1, 4);

void BM_DissipativeGap(benchmark::State& state) {
  const Superoperator l = stabilization_lindbladian(stab(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(dissipative_gap(l));
}
BENCHMARK(BM_DissipativeGap)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Propagator(benchmark::State& state) {
  const Superoperator l = stabilization_lindbladian(stab(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(propagator(l, 10.0));
}
BENCHMARK(BM_Propagator)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SimulateCx(benchmark::State& state) {
  CxConfig cfg;
  cfg.fg = whole(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_cx(cfg, ControlState::kZero));
}
BENCHMARK(BM_SimulateCx)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
