#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dltbandit/bandit.hpp"
#include "dltbandit/random.hpp"
#include "dltbandit/schedule.hpp"
#include "dltbandit/search.hpp"

namespace dltbandit {

enum class Redraw { per_unit_interval, single_draw };

// Background load on each channel and CPU. Every unit interval of the
// horizon draws a job count uniformly from [min_jobs, max_jobs]; the
// resource is then shared by that many jobs plus ours.
struct BackgroundJobModel {
  int min_jobs = 10;
  int max_jobs = 200;
  double horizon = 40.0;
  Redraw redraw = Redraw::per_unit_interval;
  HorizonBehavior horizon_behavior = HorizonBehavior::hold_last;

  void validate() const;
};

SystemTraces generate_traces(const BackgroundJobModel& model, const SystemConfig& system,
                             Rng& rng);

enum class Mode { time_invariant, time_varying };
enum class Algorithm { ts_exhaustive, ts_weights, ts_hillclimb, ts_batch, random_baseline };

struct NormalizerConfig {
  NormalizerStrategy strategy = NormalizerStrategy::single_processor_estimate;
  double value = 0.0;  // fixed_bound only
};

struct ExperimentConfig {
  SystemConfig system;
  Mode mode = Mode::time_invariant;
  Algorithm algorithm = Algorithm::ts_exhaustive;
  std::size_t trials = 5000;
  std::size_t window = 100;
  std::uint64_t seed = 0;
  std::size_t arm_cap = kDefaultArmCap;
  NormalizerConfig normalizer;
  HillClimbConfig hill_climb;
  BatchConfig batch;
  BackgroundJobModel background;

  // Throws ConfigError.
  void validate() const;
};

struct TrialRecord {
  std::size_t trial = 0;  // 1-based
  Sequence sequence;
  double makespan = 0.0;
  double reward = 0.0;
  bool bernoulli = false;
  double tf_max = 0.0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Everything needed to continue a run bit-exactly: posterior, normalizer
// history and the position of every RNG stream.
struct ExperimentState {
  Algorithm algorithm = Algorithm::ts_exhaustive;
  std::size_t n_workers = 0;
  std::size_t trials_done = 0;
  std::optional<ArmTable> arms;
  std::optional<WeightVector> weights;
  std::optional<BatchState> batch;
  std::optional<double> max_observed;
  std::map<std::string, std::string> rng_streams;

  friend bool operator==(const ExperimentState&, const ExperimentState&) = default;
};

// A seeded training run, advanced one trial (one incoming load) at a time.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);
  // Resume from a snapshot taken with the same configuration.
  Experiment(ExperimentConfig cfg, const ExperimentState& state);

  const TrialRecord& step();
  // Steps until `trials` in total have been played.
  void run_to(std::size_t trials);

  std::size_t trials_done() const noexcept { return trials_done_; }
  const std::vector<TrialRecord>& records() const noexcept { return records_; }
  const ExperimentConfig& config() const noexcept { return cfg_; }

  Recommendation recommendation() const;
  ExperimentState state() const;

 private:
  Sequence choose();
  void learn(const Sequence& chosen, bool r);

  ExperimentConfig cfg_;
  std::size_t trials_done_ = 0;
  std::vector<TrialRecord> records_;
  RewardNormalizer normalizer_;
  Rng trace_rng_;
  Rng selection_rng_;
  Rng bernoulli_rng_;
  Rng search_rng_;
  std::optional<ArmTable> arms_;
  std::optional<WeightVector> weights_;
  std::optional<BatchOptimizer> batch_;
  ScoreMinimizer minimizer_;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  ExperimentState state;
  Recommendation recommendation;
};

// Runs cfg.trials trials. Solver and capacity errors are rethrown with the
// failing trial index in the message.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// sum_t (T_f(t) - t_f_star).
double cumulative_regret(std::span<const TrialRecord> records, double t_f_star);
// Mean excess finishing time over trials t1..t2 (1-based, inclusive).
double windowed_regret(std::span<const TrialRecord> records, double t_f_star,
                       std::size_t t1, std::size_t t2);

struct EnumeratedSequence {
  Sequence sequence;
  double makespan = 0.0;
};

// Every sequence solved time-invariantly, ascending by makespan (stable
// w.r.t. lexicographic order). Throws CapacityError above `cap`.
std::vector<EnumeratedSequence> enumerate_sequences(const SystemConfig& cfg,
                                                    std::size_t cap = kDefaultArmCap);

struct WindowStat {
  std::size_t first_trial = 0;
  std::size_t last_trial = 0;
  double mean_makespan = 0.0;
  std::optional<double> mean_regret;
};

struct RegretReport {
  std::optional<double> t_f_star;
  std::optional<double> cumulative;
  std::vector<WindowStat> windows;
};

// Consecutive windows of `window` trials; the last may be shorter. A
// window larger than the record count collapses to a single window.
RegretReport regret_report(std::span<const TrialRecord> records, std::size_t window,
                           std::optional<double> t_f_star);

std::string to_string(Algorithm a);
std::string to_string(Mode m);
std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);

}  // namespace dltbandit
