#include <benchmark/benchmark.h>

#include <theta/koszul.hpp>
#include <theta/lattice.hpp>
#include <theta/reduced_complex.hpp>
#include <theta/theta_eval.hpp>

using namespace theta;
using namespace std::complex_literals;

namespace {

void BM_ClassicalConeSum(benchmark::State& state) {
  const ComplexMatrix omega = ComplexMatrix::Constant(1, 1, 1i);
  const ConeSpec cone = positive_cone(SplitBasis::reference(1, 0));
  const ComplexVector z = ComplexVector::Zero(1);
  SumOptions opts;
  opts.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cone_sum(z, omega, cone, opts));
}
BENCHMARK(BM_ClassicalConeSum)->Arg(8)->Arg(12);

void BM_IndefiniteConeSum(benchmark::State& state) {
  ComplexMatrix omega(2, 2);
  omega << 0.21 - 1.0i, 0.33 + 0.17i, 0.33 + 0.17i, -0.12 + 1.4i;
  const ConeSpec cone = positive_cone(SplitBasis::reference(2, 1));
  const ComplexVector z = sample_points(2, 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(cone_sum(z, omega, cone));
}
BENCHMARK(BM_IndefiniteConeSum);

void BM_ChainMapOnWord(benchmark::State& state) {
  SplitMix64 rng(5);
  const IntMatrix W = random_type_word(2, 1, static_cast<int>(state.range(0)), rng);
  const KoszulChain gen = KoszulChain::generator(4, {0, 3});
  for (auto _ : state) benchmark::DoNotOptimize(s_star(W, gen));
}
BENCHMARK(BM_ChainMapOnWord)->Arg(1)->Arg(3);

void BM_CohomologyRanks(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_ranks(k, 5));
}
BENCHMARK(BM_CohomologyRanks)->Arg(1)->Arg(2);

}  // namespace
BENCHMARK_MAIN();
