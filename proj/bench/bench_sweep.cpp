#include <benchmark/benchmark.h>

#include "qwalk/sweep.hpp"

namespace {

qwalk::SweepConfig config(int trials) {
  qwalk::SweepConfig cfg;
  cfg.trials = trials;
  cfg.steps = 50;
  cfg.seed = 1;
  return cfg;
}

void BM_EquivalenceSerial(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::equivalence_sweep_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EquivalenceParallel(benchmark::State& state) {
  const auto cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::equivalence_sweep(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = qwalk::max_threads();
}

std::vector<double> mus(int n) {
  std::vector<double> v;
  for (int i = 1; i <= n; ++i) v.push_back(static_cast<double>(i) / n);
  return v;
}

void BM_RingSerial(benchmark::State& state) {
  const auto in = qwalk::JonesField::single_mode(0, qwalk::kInvSqrt2, qwalk::Complex(0, qwalk::kInvSqrt2));
  qwalk::RingConfig base;
  base.n_iterations = 100;
  const auto m = mus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::ring_sweep_serial(in, base, m));
}

void BM_RingParallel(benchmark::State& state) {
  const auto in = qwalk::JonesField::single_mode(0, qwalk::kInvSqrt2, qwalk::Complex(0, qwalk::kInvSqrt2));
  qwalk::RingConfig base;
  base.n_iterations = 100;
  const auto m = mus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qwalk::ring_sweep(in, base, m));
}

}  // namespace

BENCHMARK(BM_EquivalenceSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivalenceParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RingSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RingParallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
