// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "ocat/lattice_models.hpp"
#include "ocat/overlap_engine.hpp"
#include "ocat/special_functions.hpp"
#include "ocat/spectral_core.hpp"

namespace {

ocat::PotentialSpec single_site(double v) {
  ocat::PotentialSpec pot;
  pot.perturbation = {{0, v}};
  return pot;
}

void BM_Diagonalize(benchmark::State& state) {
  const ocat::ModelConfig model{static_cast<int>(state.range(0))};
  const auto h = ocat::build_hamiltonian(model, single_site(2.0), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocat::diagonalize(h));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Diagonalize)->RangeMultiplier(2)->Range(100, 1600)->Unit(benchmark::kMillisecond)
    ->Complexity();

void BM_EigenvaluesOnly(benchmark::State& state) {
  const ocat::ModelConfig model{static_cast<int>(state.range(0))};
  const auto h = ocat::build_hamiltonian(model, single_site(2.0), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocat::eigenvalues(h));
  }
}
BENCHMARK(BM_EigenvaluesOnly)->RangeMultiplier(4)->Range(100, 6400)->Unit(benchmark::kMicrosecond);

void BM_OverlapReport(benchmark::State& state) {
  const ocat::ModelConfig model{static_cast<int>(state.range(0))};
  const auto pot = single_site(2.0);
  const auto sys_h = ocat::diagonalize(ocat::build_hamiltonian(model, pot, false));
  const auto sys_hp = ocat::diagonalize(ocat::build_hamiltonian(model, pot, true));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocat::compute_overlap_report(sys_h, sys_hp, 2.0, 4));
  }
}
BENCHMARK(BM_OverlapReport)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond);

void BM_HilbertMoment(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocat::hilbert_moment(4, state.range(0)));
  }
}
BENCHMARK(BM_HilbertMoment)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond);

void BM_McIn(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ocat::mc_in(static_cast<int>(state.range(0)), 100000, 1));
  }
}
BENCHMARK(BM_McIn)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
