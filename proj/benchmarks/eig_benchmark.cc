// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "nhlattice/analysis.hpp"
#include "nhlattice/eig.hpp"
#include "nhlattice/model.hpp"
#include "nhlattice/skin.hpp"

using namespace nhlattice;

namespace {

// Re(q) kept small enough for N = 64 to stay inside the range guard.
ModelParams ring(int n) { return BoundaryFamily{0.5, 1.0, Complex(0.5, 1.0), 1.0}.expand(n); }

void BM_Eigenvalues(benchmark::State& state) {
  const ComplexMatrix h = build_hamiltonian(ring(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNCubed);

void BM_Eigensystem(benchmark::State& state) {
  const ComplexMatrix h = build_hamiltonian(ring(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eigensystem(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigensystem)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNCubed);

void BM_Balance(benchmark::State& state) {
  const ComplexMatrix h = build_hamiltonian(BoundaryFamily{2.0, 0.0, 4.0, 1.0}.expand(
      static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(balance(h));
}
BENCHMARK(BM_Balance)->Arg(10)->Arg(15);

void BM_MultisetDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  const auto n = static_cast<std::size_t>(state.range(0));
  ComplexVector a(n);
  ComplexVector b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = {g(rng), g(rng)};
    b[i] = a[(i * 7 + 3) % n] + Complex(1e-9 * g(rng), 0.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(multiset_distance(a, b));
}
BENCHMARK(BM_MultisetDistance)->Arg(10)->Arg(64);

void BM_SweepRho(benchmark::State& state) {
  const SweepBase base{10, BoundaryFamily{1.0, 0.0, 4.0, 1.0}};
  std::vector<double> grid(201);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 2.0 * double(i) / 200.0;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(base, Axis::rho, grid));
}
BENCHMARK(BM_SweepRho)->Unit(benchmark::kMillisecond);

void BM_ExceptionalPointScan(benchmark::State& state) {
  const SweepBase base{4, BoundaryFamily{1.0, 0.0, 4.0, 1.0}};
  for (auto _ : state)
    benchmark::DoNotOptimize(find_exceptional_points(base, Axis::r, -5.0, 0.0, {.coarse_steps = 400}));
}
BENCHMARK(BM_ExceptionalPointScan)->Unit(benchmark::kMillisecond);

void BM_SkinProfile(benchmark::State& state) {
  const ModelParams p = BoundaryFamily{1.0, 0.0, 4.0, 1.0}.expand(10);
  for (auto _ : state) benchmark::DoNotOptimize(skin_profile(p, Frame::bare, ModeSide::right));
}
BENCHMARK(BM_SkinProfile);

}  // namespace

BENCHMARK_MAIN();
