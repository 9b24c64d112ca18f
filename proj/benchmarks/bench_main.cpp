#include <benchmark/benchmark.h>

#include "eisq/classgroup.hpp"
#include "eisq/etacusp.hpp"
#include "eisq/modforms.hpp"
#include "eisq/selmer.hpp"

using namespace eisq;

static void BM_ClassNumber(benchmark::State& state) {
  const auto p = static_cast<arith::Int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classgroup::class_number(p));
}
BENCHMARK(BM_ClassNumber)->Arg(71)->Arg(1999)->Arg(100003);

// twists by one, two and four primes
static const arith::Int kTwists[] = {-11, 3 * 19, 3 * 5 * 11 * 13};

static void BM_SelmerGraph(benchmark::State& state) {
  const auto td = selmer::build_twist(7, kTwists[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(selmer::selmer_rank_graph(td));
}
BENCHMARK(BM_SelmerGraph)->DenseRange(0, 2);

static void BM_SelmerBruteForce(benchmark::State& state) {
  const auto td = selmer::build_twist(7, kTwists[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(selmer::selmer_group_bruteforce(td));
}
BENCHMARK(BM_SelmerBruteForce)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

static void BM_CuspidalOrderPrime(benchmark::State& state) {
  const auto D = etacusp::zero_minus_infinity(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(etacusp::cuspidal_class_order(D));
}
BENCHMARK(BM_CuspidalOrderPrime)->Arg(11)->Arg(67);

static void BM_CuspidalGroupP2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(etacusp::cuspidal_group_invariants(state.range(0)));
}
BENCHMARK(BM_CuspidalGroupP2)->Arg(7)->Arg(13)->Arg(43)->Unit(benchmark::kMicrosecond);

static void BM_Eigencheck(benchmark::State& state) {
  const auto P = static_cast<arith::Int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(modforms::eisenstein_eigencheck(11, P, {2, 3, 5, 7, 11, 13}));
}
BENCHMARK(BM_Eigencheck)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
