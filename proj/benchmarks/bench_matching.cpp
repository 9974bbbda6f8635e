#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "wvn/equivalence.hpp"
#include "wvn/families.hpp"
#include "wvn/matching.hpp"

namespace {

void BM_BottleneckMatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(wvn::bottleneck_match(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BottleneckMatch)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_WvnRationals(benchmark::State& state) {
  wvn::FamilyParams p1;
  p1.variant = 1;
  const wvn::OperatorSpec a = wvn::make_family("rationals"), b = wvn::make_family("rationals", p1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wvn::wvn_construct(a, b, n));
}
BENCHMARK(BM_WvnRationals)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
