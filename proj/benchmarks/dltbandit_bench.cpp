#include <benchmark/benchmark.h>

#include <random>

#include "dltbandit/bandit.hpp"
#include "dltbandit/harness.hpp"
#include "dltbandit/schedule.hpp"
#include "dltbandit/search.hpp"

namespace {

using namespace dltbandit;

SystemConfig ladder(int n) {
  SystemConfig c;
  for (int i = 1; i <= n; ++i) {
    c.z.push_back(1.0 + i);
    c.omega.push_back(1.0 + i);
  }
  c.t_cm = 1;
  c.t_cp = 4;
  return c;
}

std::vector<double> uniform_weights(std::size_t n, std::uint64_t seed) {
  Rng g = make_stream(seed, Stream::selection);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n * n);
  for (auto& x : w) x = u(g);
  return w;
}

void BM_SolveTimeInvariant(benchmark::State& state) {
  const auto cfg = ladder(static_cast<int>(state.range(0)));
  const auto seq = Sequence::identity(cfg.n_workers());
  for (auto _ : state) benchmark::DoNotOptimize(solve_time_invariant(cfg, seq));
}
BENCHMARK(BM_SolveTimeInvariant)->Arg(4)->Arg(8)->Arg(20);

void BM_SolveTimeVarying(benchmark::State& state) {
  const auto cfg = ladder(static_cast<int>(state.range(0)));
  Rng rng = make_stream(1, Stream::traces);
  const auto traces = generate_traces(BackgroundJobModel{}, cfg, rng);
  const auto seq = Sequence::identity(cfg.n_workers());
  for (auto _ : state) benchmark::DoNotOptimize(solve_time_varying(cfg, traces, seq));
}
BENCHMARK(BM_SolveTimeVarying)->Arg(4)->Arg(8)->Arg(20);

void BM_GenerateTraces(benchmark::State& state) {
  const auto cfg = ladder(8);
  Rng rng = make_stream(1, Stream::traces);
  for (auto _ : state) benchmark::DoNotOptimize(generate_traces(BackgroundJobModel{}, cfg, rng));
}
BENCHMARK(BM_GenerateTraces);

void BM_SelectArmExhaustive(benchmark::State& state) {
  const ArmTable table(static_cast<std::size_t>(state.range(0)));
  Rng rng = make_stream(1, Stream::selection);
  for (auto _ : state) benchmark::DoNotOptimize(select_arm_exhaustive(table, rng));
}
BENCHMARK(BM_SelectArmExhaustive)->Arg(4)->Arg(6);

void BM_ExhaustiveArgmin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = uniform_weights(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_argmin(w, n));
}
BENCHMARK(BM_ExhaustiveArgmin)->Arg(4)->Arg(6)->Arg(8);

void BM_HillClimb(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HillClimbConfig cfg{20, static_cast<std::size_t>(state.range(1)), true};
  const auto w = uniform_weights(n, 3);
  Rng rng = make_stream(3, Stream::search);
  for (auto _ : state) benchmark::DoNotOptimize(hill_climb(w, n, cfg, rng));
}
BENCHMARK(BM_HillClimb)->Args({4, 500})->Args({8, 50})->Args({20, 50});

void BM_MinCostAssignment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = uniform_weights(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(min_cost_assignment(w, n));
}
BENCHMARK(BM_MinCostAssignment)->Arg(8)->Arg(20);

void BM_ExperimentTrial(benchmark::State& state) {
  ExperimentConfig c;
  c.system = ladder(8);
  c.mode = Mode::time_varying;
  c.algorithm = static_cast<Algorithm>(state.range(0));
  c.trials = 1000000;
  c.hill_climb = {20, 50, true};
  Experiment e(c);
  for (auto _ : state) benchmark::DoNotOptimize(e.step());
  state.SetLabel(to_string(c.algorithm));
}
BENCHMARK(BM_ExperimentTrial)
    ->Arg(static_cast<int>(Algorithm::ts_hillclimb))
    ->Arg(static_cast<int>(Algorithm::ts_batch))
    ->Arg(static_cast<int>(Algorithm::random_baseline));

}  // namespace

BENCHMARK_MAIN();
