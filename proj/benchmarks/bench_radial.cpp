#include <benchmark/benchmark.h>

#include "solitonlab/profile.hpp"
#include "solitonlab/radial.hpp"

using namespace solitonlab;

namespace {

void BM_RadialSolve(benchmark::State& state) {
  RadialProblem prob;
  prob.A = 0.1;
  prob.r_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_radial(prob));
}
BENCHMARK(BM_RadialSolve)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_StaticEnergyQuadrature(benchmark::State& state) {
  const LaneEmdenProfile prof(SolitonParams{});
  for (auto _ : state) benchmark::DoNotOptimize(static_energy(prof));
}
BENCHMARK(BM_StaticEnergyQuadrature);

}  // namespace
