// Copyright 2026 The bimodal Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "bimodal/ecs.hpp"
#include "bimodal/evolve.hpp"
#include "bimodal/hamiltonian.hpp"
#include "bimodal/observables.hpp"

namespace {

using namespace bimodal;

PhysicalParams reference(int n_atoms) {
  PhysicalParams p;
  p.lambda = 1.0;
  p.delta = 12.5;
  p.omega_rabi = 1.0;
  p.n_atoms = n_atoms;
  return p;
}

void BM_SpectralQbs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HilbertSpace space = make_space(n, n, 0);
  const Operator h = qbs(space, 0.5, true);
  const StateVector psi = coherent_state(space, 1.5, 1.0);
  for (auto _ : state) {
    const SpectralPropagator prop(h);
    benchmark::DoNotOptimize(prop.apply(psi, 1.0).amplitudes.data());
  }
}
BENCHMARK(BM_SpectralQbs)->Arg(12)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HilbertSpace space = make_space(n, n, 0);
  const ECSSchedule sch = ECSSchedule::make(2, 3, 0.5);
  const DensityMatrix rho = reduced_rho_a(ecs_state(space, 3.0, 2.0, sch));
  for (auto _ : state) benchmark::DoNotOptimize(wigner(rho).w.data());
}
BENCHMARK(BM_WignerGrid)->Arg(30)->Arg(45)->Unit(benchmark::kMillisecond);

void BM_Rk4Step(benchmark::State& state) {
  const int atoms = static_cast<int>(state.range(0));
  const HilbertSpace space = make_space(8, 8, atoms);
  const auto gen = exact_n_atoms_generator(space, reference(atoms));
  const StateVector psi = coherent_state(space, 1.0, cplx(0.0, 1.0), uniform_atoms(atoms, AtomState::kPlus));
  TimeDepOptions opt;
  opt.dt = max_time_step(gen.fast_frequency());
  opt.store_states = false;
  constexpr int kSteps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(propagate_timedep(gen, psi, kSteps * opt.dt, opt).norm_drift);
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK(BM_Rk4Step)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EcsState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HilbertSpace space = make_space(n, n, 0);
  const ECSSchedule sch = ECSSchedule::make(2, 7, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ecs_state(space, 3.0, 2.0, sch).amplitudes.data());
}
BENCHMARK(BM_EcsState)->Arg(30)->Arg(45)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
