#include <vector>

#include <benchmark/benchmark.h>

#include "cubehc/cube_function.hpp"
#include "cubehc/lens_geometry.hpp"
#include "cubehc/multiplier.hpp"
#include "cubehc/oracle.hpp"
#include "cubehc/rng.hpp"
#include "cubehc/scan.hpp"
#include "cubehc/verify.hpp"

using namespace cubehc;

static std::vector<Complex> random_values(int n) {
  Rng rng(11);
  std::vector<Complex> v(std::size_t{1} << n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return v;
}

static void BM_Analyze(benchmark::State& state) {
  const auto values = random_values(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(values));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(values.size()));
}
BENCHMARK(BM_Analyze)->DenseRange(8, 20, 4);

static void BM_NoiseNorm(benchmark::State& state) {
  const auto f = analyze(random_values(static_cast<int>(state.range(0))));
  const Complex z(0.4, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(apply_noise(f, z), 2.5));
}
BENCHMARK(BM_NoiseNorm)->DenseRange(8, 16, 4);

static void BM_ReducedScan(benchmark::State& state) {
  const auto pr = reduced_problem(2.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan(pr).worst_margin);
}
BENCHMARK(BM_ReducedScan)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Search(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.restarts = 100;
  const Complex z = std::polar(boundary_radius_closed(2.5, 0.7), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(search_violation(2.5, 2.5, z, cfg).best_ratio);
}
BENCHMARK(BM_Search)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_MultiplierSolve(benchmark::State& state) {
  MomentProblem prob;
  prob.p = prob.q = 2.5;
  prob.d = static_cast<int>(state.range(0));
  for (int j = 0; j <= prob.d; ++j) prob.phi.emplace_back(j);
  for (auto _ : state) benchmark::DoNotOptimize(solve(prob).upper);
}
BENCHMARK(BM_MultiplierSolve)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
