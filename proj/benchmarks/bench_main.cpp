#include <benchmark/benchmark.h>

#include "nonlocality/cglmp.hpp"
#include "nonlocality/chsh.hpp"
#include "nonlocality/polytope.hpp"
#include "nonlocality/state.hpp"

namespace nl = nonlocality;

namespace {

nl::BehaviorTable maximal_cglmp_table() {
  return nl::cglmp_behavior({nl::gamma_schmidt(1.0), nl::standard_cglmp_phases()});
}

void BM_CglmpAnalytic(benchmark::State& state) {
  const nl::CglmpScenario scenario(nl::gamma_schmidt(0.79), nl::standard_cglmp_phases());
  for (auto _ : state) benchmark::DoNotOptimize(nl::analytic_cglmp_value(scenario));
}
BENCHMARK(BM_CglmpAnalytic);

void BM_CglmpBehavior(benchmark::State& state) {
  const nl::CglmpScenario scenario(nl::gamma_schmidt(0.79), nl::standard_cglmp_phases());
  for (auto _ : state) benchmark::DoNotOptimize(nl::cglmp_value(nl::cglmp_behavior(scenario)));
}
BENCHMARK(BM_CglmpBehavior);

void BM_ChshOptimize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nl::optimize_chsh(0.3).result.value);
}
BENCHMARK(BM_ChshOptimize)->Unit(benchmark::kMillisecond);

void BM_KlSolver(benchmark::State& state) {
  const auto table = maximal_cglmp_table();
  nl::KlOptions options;
  options.method = static_cast<nl::KlMethod>(state.range(0));
  options.gap_tolerance = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(nl::kl_to_local(table, options).distance_bits);
  state.SetLabel(nl::to_string(options.method));
}
BENCHMARK(BM_KlSolver)
    ->Arg(static_cast<int>(nl::KlMethod::ConditionalGradient))
    ->Arg(static_cast<int>(nl::KlMethod::MultiplicativeWeights))
    ->Unit(benchmark::kMillisecond);

void BM_LocalMembership(benchmark::State& state) {
  const auto table = maximal_cglmp_table();
  for (auto _ : state) benchmark::DoNotOptimize(nl::local_membership(table).member);
}
BENCHMARK(BM_LocalMembership)->Unit(benchmark::kMillisecond);

void BM_EnumeratePolytope(benchmark::State& state) {
  const int outcomes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nl::LocalPolytope::enumerate({2, 2, outcomes, outcomes}).size());
  }
}
BENCHMARK(BM_EnumeratePolytope)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
