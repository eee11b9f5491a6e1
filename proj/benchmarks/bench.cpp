#include <benchmark/benchmark.h>

#include "kdvred/checks.hpp"
#include "kdvred/dynamics.hpp"
#include "kdvred/exchange.hpp"
#include "kdvred/lax.hpp"
#include "kdvred/ucoeffs.hpp"

using namespace kdvred;

static void ExchangeBuildAndRank(benchmark::State& state) {
  int n = static_cast<int>(state.range(0)), m = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto em = build_exchange(Family::T1, n, m);
    benchmark::DoNotOptimize(rank_exact(rat_from_int(em.B)));
  }
}
BENCHMARK(ExchangeBuildAndRank)->Args({16, 9})->Args({19, 2})->Args({11, 4});

static void CoefficientSolve(benchmark::State& state) {
  int n = static_cast<int>(state.range(0)), m = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_u_coefficients(n, m));
}
BENCHMARK(CoefficientSolve)->Args({16, 9})->Args({17, 11});

static void KdvOrbit(benchmark::State& state) {
  ReductionSpec s(4, 3, Rat(-1));
  std::vector<Rat> init{Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(3)};
  for (auto _ : state) {
    Orbit orb;
    orb.spec = s;
    orb.kind = StateKind::V;
    orb.max_history = 0;
    orb.values = init;
    orb.extend(static_cast<size_t>(state.range(0)));
    benchmark::DoNotOptimize(orb.values.back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(KdvOrbit)->Arg(50)->Arg(200)->Arg(400)->Complexity();

static void MonodromyTrace(benchmark::State& state) {
  int n = static_cast<int>(state.range(0)), m = static_cast<int>(state.range(1));
  ReductionSpec s(n, m, Rat(2, 3));
  RatSampler sampler(1);
  auto v = sampler.point(static_cast<size_t>(n + m));
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_v<Rat>(s, v).trace());
}
BENCHMARK(MonodromyTrace)->Args({7, 4})->Args({9, 4})->Args({12, 1});

static void JacobiCheckPoint(benchmark::State& state) {
  ReductionSpec s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                  Rat(2, 3));
  auto b = BracketSpec::kdv2(s);
  uint64_t seed = 5;
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_check(b, 1, seed++).pass);
}
BENCHMARK(JacobiCheckPoint)->Args({4, 3})->Args({8, 3});

BENCHMARK_MAIN();
