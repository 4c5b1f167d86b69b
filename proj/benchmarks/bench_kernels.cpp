#include <benchmark/benchmark.h>

#include <cmath>

#include "solitonlab/field_grid.hpp"
#include "solitonlab/kernels.hpp"
#include "solitonlab/worldline.hpp"

using namespace solitonlab;

namespace {

SolitonParams fig_params() {
  SolitonParams p;
  p.omega0 = 0.8;
  p.r0 = 1.25 / std::sqrt(10.0);
  return p;
}

void BM_LightConeUniform(benchmark::State& state) {
  const UniformWorldline w({0, 0, 0, 0}, 0.6);
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_light_cone(w, {0.3, x, 1.0, 0.0}));
    x = x > 5.0 ? -5.0 : x + 0.01;
  }
}
BENCHMARK(BM_LightConeUniform);

void BM_LightConeHyperbola(benchmark::State& state) {
  const auto w = hyperbolic_worldline(1.0, 0.6);
  double t = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_light_cone(*w, {t, 0.5, 0.7, 0.0}));
    t = t > 5.0 ? -5.0 : t + 0.01;
  }
}
BENCHMARK(BM_LightConeHyperbola);

void BM_GridFillUniform(benchmark::State& state) {
  const auto p = fig_params();
  const UniformWorldline w({0, 0, 0, 0}, 0.6);
  const auto path = PathData::classical(p.omega0);
  SliceSpec s;
  s.min1 = s.min2 = -10.0;
  s.max1 = s.max2 = 10.0;
  s.n1 = s.n2 = static_cast<std::size_t>(state.range(0));
  const PairEvaluator eval = [&](const FourVector& x) {
    const auto v = lienard_all(p, w, path, x);
    return std::array<Complex, 2>{v.ret, v.adv};
  };
  for (auto _ : state) benchmark::DoNotOptimize(fill_grids(s, eval, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_GridFillUniform)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
