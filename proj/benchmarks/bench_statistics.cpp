#include <benchmark/benchmark.h>

#include <vector>

#include "lgof/estimation.hpp"
#include "lgof/logistic.hpp"
#include "lgof/montecarlo.hpp"
#include "lgof/statistics.hpp"

namespace {

std::vector<double> residuals(std::size_t n) {
  lgof::RngStream stream(7, n);
  const auto x = lgof::sample(n, {}, stream);
  const auto r = lgof::scaled_residuals(x);
  return {r.values().begin(), r.values().end()};
}

void BM_Statistic(benchmark::State& state, lgof::StatisticId id) {
  const auto y = residuals(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lgof::evaluate(id, y).value);
  state.SetComplexityN(state.range(0));
}

void BM_TQuadrature(benchmark::State& state) {
  const auto y = residuals(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lgof::t_stat_quadrature(y, {3.0}).value);
}

void BM_Battery(benchmark::State& state) {
  const auto y = residuals(static_cast<std::size_t>(state.range(0)));
  const auto ids = lgof::standard_battery();
  std::vector<double> out(ids.size());
  for (auto _ : state) {
    lgof::evaluate_many(ids, y, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_NullReplications(benchmark::State& state) {
  lgof::McConfig cfg;
  cfg.reps = 256;
  cfg.n = static_cast<std::size_t>(state.range(0));
  cfg.workers = 1;
  const lgof::StatisticId ids[] = {lgof::StatisticId::t(3)};
  for (auto _ : state) benchmark::DoNotOptimize(lgof::simulate_null(ids, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.reps));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Statistic, T3, lgof::StatisticId::t(3))->Arg(20)->Arg(50)->Arg(128);
BENCHMARK_CAPTURE(BM_Statistic, S, lgof::StatisticId::s())->Arg(20)->Arg(50)->Arg(128);
BENCHMARK_CAPTURE(BM_Statistic, R1, lgof::StatisticId::r(1))->Arg(20)->Arg(50)->Arg(128);
BENCHMARK_CAPTURE(BM_Statistic, R3, lgof::StatisticId::r(3))->Arg(20)->Arg(50)->Arg(128);
BENCHMARK_CAPTURE(BM_Statistic, AD, lgof::StatisticId::ad())->Arg(20)->Arg(50)->Arg(128);
BENCHMARK(BM_TQuadrature)->Arg(20)->Arg(50);
BENCHMARK(BM_Battery)->Arg(20)->Arg(50)->Arg(128);
BENCHMARK(BM_NullReplications)->Arg(20)->Arg(50);

BENCHMARK_MAIN();
