// SPDX-License-Identifier: MIT
//
// Serial reference vs OpenMP kernels. Both flavours sum each target row in the
// same order, so the outputs are bitwise identical; only wall time differs.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "muskat/evolution.hpp"
#include "muskat/kernels.hpp"

using namespace muskat;

namespace {

std::vector<double> bump(const GridSpec& g) {
  std::vector<double> f(static_cast<size_t>(g.n_points));
  for (int j = 0; j < g.n_points; ++j) {
    const double a = g.point(j);
    f[static_cast<size_t>(j)] = 0.1 * std::exp(-a * a / 4.0);
  }
  return f;
}

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

void BM_BuildSelf(benchmark::State& state) {
  GridSpec g(static_cast<int>(state.range(0)), 8.0 * std::numbers::pi);
  OffsetTable t(g);
  auto f = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(build_self(f, t, exec_of(state)));
}

void BM_ApplySelf(benchmark::State& state) {
  GridSpec g(static_cast<int>(state.range(0)), 8.0 * std::numbers::pi);
  OffsetTable t(g);
  auto f = bump(g);
  auto K = build_self(f, t, Exec::parallel);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_self(K.q, f, g.n_points, g.spacing(), exec_of(state)));
}

void BM_ApplyCross(benchmark::State& state) {
  GridSpec g(static_cast<int>(state.range(0)), 8.0 * std::numbers::pi);
  OffsetTable t(g);
  auto f = bump(g);
  auto K = build_curve_from_soil(f, 1.0, t, Exec::parallel);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_cross(K.q, f, g.n_points, g.spacing(), exec_of(state)));
}

void BM_Rhs(benchmark::State& state) {
  GridSpec g(static_cast<int>(state.range(0)), 8.0 * std::numbers::pi);
  FluidConfig cfg(1.0, 0.5, 0.2, 1.0);
  auto f = InterfaceField::from_samples(bump(g), g);
  RhsOptions opt;
  opt.vort.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(f, cfg, opt));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {256, 512, 1024})
    for (long par : {0, 1}) b->Args({n, par});
  b->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_BuildSelf)->Apply(sizes);
BENCHMARK(BM_ApplySelf)->Apply(sizes);
BENCHMARK(BM_ApplyCross)->Apply(sizes);
BENCHMARK(BM_Rhs)->Apply(sizes);
BENCHMARK_MAIN();
