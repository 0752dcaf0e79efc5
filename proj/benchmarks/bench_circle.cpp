#include <benchmark/benchmark.h>

#include <vector>

#include "sqdiff/arcs.hpp"
#include "sqdiff/chang.hpp"
#include "sqdiff/fourier.hpp"
#include "sqdiff/increment.hpp"
#include "sqdiff/sdf.hpp"

namespace sqdiff {
namespace {

void BM_GreedySdf(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(greedy_sdf(state.range(0)));
}
BENCHMARK(BM_GreedySdf)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ExpSum(benchmark::State& state) {
  const auto A = greedy_sdf(state.range(0));
  const auto poly = TrigPoly::indicator(A);
  double g = 0.123;
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly(g));
    g += 1e-7;
  }
}
BENCHMARK(BM_ExpSum)->Arg(10000)->Arg(100000);

void BM_ParsevalQuadrature(benchmark::State& state) {
  const auto A = random_subset(state.range(0), 0.3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(full_circle_g_squared(A));
}
BENCHMARK(BM_ParsevalQuadrature)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_ArcMassEngine(benchmark::State& state) {
  const auto A = planted_sdf(state.range(0), 3, 1);
  for (auto _ : state) {
    const ArcMassEngine engine(A);
    benchmark::DoNotOptimize(engine.masses_for_denominator(7, 20));
  }
}
BENCHMARK(BM_ArcMassEngine)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_FindIncrement(benchmark::State& state) {
  const auto A = planted_sdf(10000, 2, 1);
  const double nu = nu_of_alpha(A.density(), 1.0);
  IncrementOptions o;
  o.c0 = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(find_increment(A, 2, 1, nu, o));
}
BENCHMARK(BM_FindIncrement)->Unit(benchmark::kMillisecond);

void BM_ChangCheck(benchmark::State& state) {
  const auto A = random_subset(256, 0.3, 1);
  const std::vector<double> gamma = {0.1, 0.25, 0.3333, 0.71, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(chang_check(A, gamma, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ChangCheck)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sqdiff
