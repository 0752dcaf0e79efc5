#include <benchmark/benchmark.h>

#include "sqdiff/decomposition.hpp"
#include "sqdiff/energy.hpp"
#include "sqdiff/random.hpp"

namespace sqdiff {
namespace {

RationalSet one_per_denominator(std::int64_t Q) {
  Rng rng(static_cast<std::uint64_t>(Q));
  std::vector<ReducedRational> v;
  for (std::int64_t q = Q / 2; q <= Q; ++q) {
    const auto r = rationals_with_denominator(q);
    v.push_back(r[rng.uniform(0, r.size() - 1)]);
  }
  return RationalSet::from_elements(v);
}

void BM_EnergyBrute(benchmark::State& state) {
  const auto B = one_per_denominator(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(energy_brute(B, 2));
}
BENCHMARK(BM_EnergyBrute)->Arg(16)->Arg(32);

void BM_EnergyMitm(benchmark::State& state) {
  const auto B = one_per_denominator(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(energy_mitm(B, 2));
}
BENCHMARK(BM_EnergyMitm)->Arg(16)->Arg(32)->Arg(64);

void BM_EnergyConvolution(benchmark::State& state) {
  const auto B = one_per_denominator(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(energy_from_convolution(convolution_power(B, 2)));
}
BENCHMARK(BM_EnergyConvolution)->Arg(16)->Arg(32)->Arg(64);

void BM_Decomposition(benchmark::State& state) {
  const auto Q = enumerate_rationals(state.range(0));
  const auto C = Q.values();
  const auto n = Q.max_per_denominator();
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_decomposition_bounds(Q, Q, C, 2.0, weight_one(), state.range(0), n));
  }
}
BENCHMARK(BM_Decomposition)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sqdiff
