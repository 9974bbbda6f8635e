#include <benchmark/benchmark.h>

#include "wvn/domains.hpp"
#include "wvn/families.hpp"
#include "wvn/gen_expr.hpp"

namespace {

void BM_GeneratorEval(benchmark::State& state) {
  static const char* const exprs[] = {"2^(n^0.5)", "k(n) + 0.5/(m(n) + 2)", "rat(n)",
                                      "if odd(n) then n else 0"};
  const wvn::GenExpr g = wvn::parse_generator(exprs[state.range(0)]);
  std::uint64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.eval(n));
    n = n % 100000 + 1;
  }
  state.SetLabel(exprs[state.range(0)]);
}
BENCHMARK(BM_GeneratorEval)->DenseRange(0, 3);

void BM_BandProfile(benchmark::State& state) {
  wvn::FamilyParams p;
  p.t = 0.5;
  const wvn::OperatorSpec a = wvn::make_family("A_t", p);
  for (auto _ : state) benchmark::DoNotOptimize(wvn::band_profile(a, 64));
}
BENCHMARK(BM_BandProfile)->Unit(benchmark::kMillisecond);

}  // namespace
