// Multi-seed statistical checks of the training loop. Slower than the unit
// tests; registered under the "slow" label.

#include <gtest/gtest.h>

#include "dltbandit/harness.hpp"

namespace dltbandit {
namespace {

constexpr int kSeeds = 10;

SystemConfig four_workers() {
  SystemConfig c;
  c.z = {1, 2, 9, 16};
  c.omega = {1, 2, 9, 16};
  c.t_cm = 1;
  c.t_cp = 4;
  return c;
}

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

struct SeedMeans {
  double first = 0.0;
  double last = 0.0;
  double overall = 0.0;
};

SeedMeans mean_over_seeds(ExperimentConfig cfg) {
  SeedMeans m;
  for (int s = 0; s < kSeeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto r = run_experiment(cfg);
    const auto rep = regret_report(r.records, cfg.window, std::nullopt);
    double all = 0.0;
    for (const auto& rec : r.records) all += rec.makespan;
    m.first += rep.windows.front().mean_makespan / kSeeds;
    m.last += rep.windows.back().mean_makespan / kSeeds;
    m.overall += all / static_cast<double>(r.records.size()) / kSeeds;
  }
  return m;
}

ExperimentConfig four_worker_run(Algorithm a) {
  ExperimentConfig c;
  c.system = four_workers();
  c.algorithm = a;
  c.trials = 5000;
  c.window = 100;
  return c;
}

class LearningSignal : public ::testing::TestWithParam<Algorithm> {};

TEST_P(LearningSignal, LastWindowBelowFirstAndBelowRandom) {
  const SeedMeans trained = mean_over_seeds(four_worker_run(GetParam()));
  const SeedMeans random = mean_over_seeds(four_worker_run(Algorithm::random_baseline));
  EXPECT_LT(trained.last, trained.first);
  EXPECT_LT(trained.last, random.overall);
}

INSTANTIATE_TEST_SUITE_P(FourWorkers, LearningSignal,
                         ::testing::Values(Algorithm::ts_exhaustive, Algorithm::ts_weights,
                                           Algorithm::ts_hillclimb),
                         [](const auto& info) { return to_string(info.param); });

TEST(BatchLearning, TwelveWorkersThreeBatches) {
  ExperimentConfig c;
  c.system = ladder(12);
  c.mode = Mode::time_varying;
  c.algorithm = Algorithm::ts_batch;
  c.batch = {3, 4, 1000};
  c.trials = 4000;
  c.window = 100;
  const SeedMeans batch = mean_over_seeds(c);
  c.algorithm = Algorithm::random_baseline;
  const SeedMeans random = mean_over_seeds(c);
  EXPECT_LT(batch.last, batch.first);
  EXPECT_LT(batch.last, random.overall);
}

TEST(Recommendation, FullLengthTrainingFindsTheOptimum) {
  // Minimal configuration seed; default normalizer.
  for (auto a : {Algorithm::ts_exhaustive, Algorithm::ts_weights}) {
    ExperimentConfig c = four_worker_run(a);
    c.seed = 7;
    const auto r = run_experiment(c);
    const auto best = enumerate_sequences(c.system).front().sequence;
    EXPECT_TRUE(r.recommendation.trained);
    EXPECT_EQ(r.recommendation.sequence, best) << to_string(a);
  }
}

}  // namespace
}  // namespace dltbandit
