#include <benchmark/benchmark.h>

#include <cdlevel/brown.hpp>
#include <cdlevel/level.hpp>
#include <cdlevel/quadform.hpp>
#include <cdlevel/sampling.hpp>

using namespace cdlevel;

namespace {

AlgebraPtr f7_algebra(int t) {
  auto f = Field::prime(7);
  return algebra_make(f, std::vector<Element>(t, f->integer(3)));
}

void BM_MultiplyF7(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  auto desc = f7_algebra(t);
  SearchBudget b;
  Rng rng(1);
  AlgebraElement x = random_algebra_element(desc, b, rng);
  AlgebraElement y = random_algebra_element(desc, b, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(x, y));
  }
}
BENCHMARK(BM_MultiplyF7)->Arg(2)->Arg(3)->Arg(4);

void BM_MultiplyRationals(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  auto f = Field::rationals();
  auto desc = algebra_make(f, std::vector<Element>(t, f->integer(-1)));
  SearchBudget b;
  b.height = 8;
  Rng rng(2);
  AlgebraElement x = random_algebra_element(desc, b, rng);
  AlgebraElement y = random_algebra_element(desc, b, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(x, y));
  }
}
BENCHMARK(BM_MultiplyRationals)->Arg(2)->Arg(3);

void BM_OctonionTableSymbolic(benchmark::State& state) {
  auto f = Field::parse_descriptor("ratfunc(q;a,b,g)");
  for (auto _ : state) {
    // algebra_make per iteration so the lazy table is rebuilt each time.
    auto oct = algebra_make(f, {f->parse("a"), f->parse("b"), f->parse("g")});
    benchmark::DoNotOptimize(full_table(oct));
  }
}
BENCHMARK(BM_OctonionTableSymbolic);

void BM_TowerFieldMul(benchmark::State& state) {
  auto f = Field::parse_descriptor("ratfunc(fp:7;X1,X2)");
  SearchBudget b;
  b.degree = 3;
  Rng rng(3);
  Element x = random_polynomial_element(*f, b, rng);
  Element y = random_polynomial_element(*f, b, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f->mul(x, y));
  }
}
BENCHMARK(BM_TowerFieldMul);

void BM_BruteOracle(benchmark::State& state) {
  auto desc = f7_algebra(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_level_oracle(desc));
  }
}
BENCHMARK(BM_BruteOracle)->Arg(1)->Arg(2);

void BM_SplitIsotropy(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  auto tower = brown_tower(Field::prime(7), t);
  auto nf = norm_form(tower.desc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(isotropy(nf));
  }
}
BENCHMARK(BM_SplitIsotropy)->Arg(1)->Arg(2)->Arg(3);

void BM_ZeroDivisorTrial(benchmark::State& state) {
  auto tower = brown_tower(Field::prime(7), 2);
  SearchBudget b;
  b.degree = 2;
  b.trials = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zero_divisor_search(tower.desc, b));
  }
}
BENCHMARK(BM_ZeroDivisorTrial);

}  // namespace

BENCHMARK_MAIN();
