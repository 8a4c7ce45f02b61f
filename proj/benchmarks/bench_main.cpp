#include <benchmark/benchmark.h>

#include "dkt/classical.hpp"
#include "dkt/correlations.hpp"
#include "dkt/quantum.hpp"

using namespace dkt;

static void BM_MapStep(benchmark::State& state) {
  const KickParams kick = transform_params(3.0, 1.0);
  PhasePoint p = from_angles(1.0, 0.5);
  for (auto _ : state) {
    p = map_step(p, kick);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_MapStep);

static void BM_LargestLyapunov1500(benchmark::State& state) {
  const KickParams kick = from_rotated(1.0, 0.0);
  const PhasePoint p = from_angles(1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(largest_lyapunov(p, kick, 1500));
}
BENCHMARK(BM_LargestLyapunov1500);

static void BM_LleMap(benchmark::State& state) {
  const KickParams kick = from_rotated(1.0, 0.0);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phase_averaged_chaos(kick, grid, 1500, Indicator::lle, 0));
}
BENCHMARK(BM_LleMap)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_FloquetBuild(benchmark::State& state) {
  const SpinOperators ops = build_spin_operators(state.range(0) + 0.5);
  const KickParams kick = from_rotated(1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_collective_floquet(ops, kick).matrix.data());
}
BENCHMARK(BM_FloquetBuild)->Arg(25)->Arg(75)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_EvolveAndMarginals(benchmark::State& state) {
  const double j = state.range(0) + 0.5;
  const SpinOperators ops = build_spin_operators(j);
  const FloquetMatrix f = build_collective_floquet(ops, from_rotated(1.0, 0.0));
  CVector psi = coherent_state(j, 1.0, 0.3);
  for (auto _ : state) {
    psi = f.matrix * psi;
    benchmark::DoNotOptimize(rdm_two(psi, ops).data());
  }
}
BENCHMARK(BM_EvolveAndMarginals)->Arg(25)->Arg(75)->Arg(200);

static void BM_Discord(benchmark::State& state) {
  const SpinOperators ops = build_spin_operators(3.5);
  const CVector psi = evolve(coherent_state(3.5, 1.0, 0.3), build_collective_floquet(ops, from_rotated(2.0, 0.5)), 20);
  const Rho2 rho = rdm_two(psi, ops);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_discord(rho).discord);
}
BENCHMARK(BM_Discord);

BENCHMARK_MAIN();
