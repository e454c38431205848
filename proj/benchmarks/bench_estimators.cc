#include <benchmark/benchmark.h>

#include <vector>

#include "mrplab/catalog.h"
#include "mrplab/experiments.h"
#include "mrplab/model_estimators.h"
#include "mrplab/mvu.h"
#include "mrplab/sampled_estimators.h"
#include "mrplab/sufficient_stats.h"

namespace {

using namespace mrplab;

std::vector<PathSample> layered_paths(const LayeredMrp& m, std::size_t n) {
  PathSampler sampler(m.spec);
  Rng rng(1);
  std::vector<PathSample> ps;
  for (std::size_t k = 0; k < n; ++k) ps.push_back(sampler.sample(rng));
  return ps;
}

void BM_FirstVisitMc(benchmark::State& state) {
  const auto m = gen_layered_acyclic(LayeredConfig{});
  const auto ps = layered_paths(m, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_first_visit(ps, 1.0, m.spec.num_states));
}
BENCHMARK(BM_FirstVisitMc)->Arg(10)->Arg(100)->Arg(1000);

void BM_Td(benchmark::State& state) {
  const auto m = gen_layered_acyclic(LayeredConfig{});
  const auto ps = layered_paths(m, state.range(0));
  TdConfig cfg;
  cfg.modified = true;
  for (auto _ : state) benchmark::DoNotOptimize(td_run(ps, cfg, 1.0, m.spec.num_states));
}
BENCHMARK(BM_Td)->Arg(10)->Arg(100)->Arg(1000);

void BM_MlValue(benchmark::State& state) {
  const auto m = gen_layered_acyclic(LayeredConfig{});
  const auto ps = layered_paths(m, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ml_value(ml_params(accumulate(ps, m.spec)), 1.0));
}
BENCHMARK(BM_MlValue)->Arg(10)->Arg(100)->Arg(1000);

void BM_Iml(benchmark::State& state) {
  const auto m = gen_layered_acyclic(LayeredConfig{});
  const auto ps = layered_paths(m, state.range(0));
  for (auto _ : state) {
    IterativeMl iml(m.spec, 1.0);
    for (const auto& p : ps) iml.observe(p);
    benchmark::DoNotOptimize(iml.values());
  }
}
BENCHMARK(BM_Iml)->Arg(10)->Arg(100)->Arg(1000);

void BM_MvuEnumeration(benchmark::State& state) {
  const auto topo = catalog::two_state_cycle(0.5, 0.9, 1.0, 0.0);
  std::vector<PathSample> ps;
  for (std::int64_t k = 0; k < state.range(0); ++k) ps.push_back({{0, 0, 0, 1}, {1, 1, 0}});
  const auto stat = accumulate(ps, topo);
  for (auto _ : state) benchmark::DoNotOptimize(mvu_estimate(stat, topo, 0.9));
}
BENCHMARK(BM_MvuEnumeration)->Arg(2)->Arg(4)->Arg(6);

void BM_MvuClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mvu_two_state_closed(state.range(0), 50, 0.9));
}
BENCHMARK(BM_MvuClosedForm)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
