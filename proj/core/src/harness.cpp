#include "dltbandit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dltbandit/errors.hpp"

namespace dltbandit {

void BackgroundJobModel::validate() const {
  if (min_jobs < 0 || max_jobs < min_jobs) {
    throw ConfigError("background jobs need 0 <= min_jobs <= max_jobs");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ConfigError("background.horizon must be positive");
  }
}

namespace {

SpeedTrace draw_trace(const BackgroundJobModel& model, double base, Rng& rng) {
  std::uniform_int_distribution<int> jobs(model.min_jobs, model.max_jobs);
  std::vector<double> breakpoints;
  std::vector<std::int64_t> multiplicities;
  if (model.redraw == Redraw::single_draw) {
    breakpoints.push_back(0.0);
    multiplicities.push_back(jobs(rng) + 1);
  } else {
    const auto segments = static_cast<std::size_t>(std::ceil(model.horizon));
    for (std::size_t s = 0; s < segments; ++s) {
      breakpoints.push_back(static_cast<double>(s));
      multiplicities.push_back(jobs(rng) + 1);
    }
  }
  return SpeedTrace(std::move(breakpoints), std::move(multiplicities), base,
                    model.horizon_behavior, model.horizon);
}

}  // namespace

SystemTraces generate_traces(const BackgroundJobModel& model, const SystemConfig& system,
                             Rng& rng) {
  model.validate();
  SystemTraces traces;
  traces.workers.reserve(system.n_workers());
  for (std::size_t i = 0; i < system.n_workers(); ++i) {
    SpeedTrace comm = draw_trace(model, system.z[i], rng);
    SpeedTrace compute = draw_trace(model, system.omega[i], rng);
    traces.workers.push_back({std::move(comm), std::move(compute)});
  }
  if (system.control_computes) traces.control_compute = draw_trace(model, system.omega0, rng);
  return traces;
}

void ExperimentConfig::validate() const {
  system.validate();
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (window > trials) throw ConfigError("window must not exceed trials");
  if (arm_cap < 1) throw ConfigError("arm_cap must be >= 1");
  if (normalizer.strategy == NormalizerStrategy::fixed_bound &&
      !(normalizer.value > 0.0 && std::isfinite(normalizer.value))) {
    throw ConfigError("normalizer.value must be positive");
  }
  hill_climb.validate();
  BatchConfig b = batch;
  // The enumeration cap only matters when batch phases actually run.
  b.arm_cap = algorithm == Algorithm::ts_batch ? arm_cap : std::numeric_limits<std::size_t>::max();
  b.validate();
  background.validate();
}

Experiment::Experiment(ExperimentConfig cfg)
    : cfg_(std::move(cfg)),
      trace_rng_(make_stream(cfg_.seed, Stream::traces)),
      selection_rng_(make_stream(cfg_.seed, Stream::selection)),
      bernoulli_rng_(make_stream(cfg_.seed, Stream::bernoulli)),
      search_rng_(make_stream(cfg_.seed, Stream::search)) {
  cfg_.validate();
  cfg_.batch.arm_cap = cfg_.arm_cap;
  normalizer_ = RewardNormalizer(cfg_.normalizer.strategy, cfg_.normalizer.value);
  const std::size_t n = cfg_.system.n_workers();
  switch (cfg_.algorithm) {
    case Algorithm::ts_exhaustive:
      if (n > cfg_.arm_cap) {
        throw CapacityError("ts_exhaustive needs " + std::to_string(n) + "! arms; cap is " +
                            std::to_string(cfg_.arm_cap) +
                            " workers. Use ts_hillclimb or ts_batch.");
      }
      arms_.emplace(n, BetaParams{}, cfg_.arm_cap);
      break;
    case Algorithm::ts_weights:
      if (n > cfg_.arm_cap) {
        throw CapacityError("ts_weights enumerates " + std::to_string(n) +
                            "! sequences; cap is " + std::to_string(cfg_.arm_cap) +
                            " workers. Use ts_hillclimb or ts_batch.");
      }
      weights_.emplace(n);
      minimizer_ = exhaustive_minimizer(cfg_.arm_cap);
      break;
    case Algorithm::ts_hillclimb:
      weights_.emplace(n);
      minimizer_ = hill_climb_minimizer(cfg_.hill_climb);
      break;
    case Algorithm::ts_batch: {
      Rng partition = make_stream(cfg_.seed, Stream::partition);
      batch_.emplace(n, cfg_.batch, partition);
      break;
    }
    case Algorithm::random_baseline:
      break;
  }
}

Experiment::Experiment(ExperimentConfig cfg, const ExperimentState& state)
    : Experiment(std::move(cfg)) {
  if (state.algorithm != cfg_.algorithm) {
    throw ConfigError("snapshot algorithm " + to_string(state.algorithm) +
                      " does not match configured " + to_string(cfg_.algorithm));
  }
  if (state.n_workers != cfg_.system.n_workers()) {
    throw ConfigError("snapshot has a different number of workers");
  }
  switch (cfg_.algorithm) {
    case Algorithm::ts_exhaustive:
      if (!state.arms) throw ConfigError("snapshot lacks arm table");
      arms_ = *state.arms;
      break;
    case Algorithm::ts_weights:
    case Algorithm::ts_hillclimb:
      if (!state.weights) throw ConfigError("snapshot lacks weight vector");
      weights_ = *state.weights;
      break;
    case Algorithm::ts_batch:
      if (!state.batch) throw ConfigError("snapshot lacks batch state");
      batch_.emplace(*state.batch);
      break;
    case Algorithm::random_baseline:
      break;
  }
  auto load = [&](const char* name, Rng& rng) {
    auto it = state.rng_streams.find(name);
    if (it == state.rng_streams.end()) {
      throw ConfigError(std::string("snapshot lacks RNG stream '") + name + "'");
    }
    rng = load_rng_state(it->second);
  };
  load("traces", trace_rng_);
  load("selection", selection_rng_);
  load("bernoulli", bernoulli_rng_);
  load("search", search_rng_);
  normalizer_.set_max_observed(state.max_observed);
  trials_done_ = state.trials_done;
}

Sequence Experiment::choose() {
  switch (cfg_.algorithm) {
    case Algorithm::ts_exhaustive:
      return select_arm_exhaustive(*arms_, selection_rng_);
    case Algorithm::ts_weights:
    case Algorithm::ts_hillclimb:
      return select_arm_weighted(*weights_, minimizer_, selection_rng_, search_rng_).sequence;
    case Algorithm::ts_batch:
      return batch_->propose(selection_rng_);
    case Algorithm::random_baseline: {
      std::vector<int> order(cfg_.system.n_workers());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), selection_rng_);
      return Sequence(std::move(order));
    }
  }
  throw std::logic_error("unknown algorithm");
}

void Experiment::learn(const Sequence& chosen, bool r) {
  switch (cfg_.algorithm) {
    case Algorithm::ts_exhaustive:
      arms_->update(chosen, r);
      break;
    case Algorithm::ts_weights:
    case Algorithm::ts_hillclimb:
      weights_->update(encode_sequence(chosen), r);
      break;
    case Algorithm::ts_batch:
      batch_->update(r);
      break;
    case Algorithm::random_baseline:
      break;
  }
}

const TrialRecord& Experiment::step() {
  const std::size_t t = trials_done_ + 1;
  try {
    const bool varying = cfg_.mode == Mode::time_varying;
    SystemTraces traces;
    if (varying) traces = generate_traces(cfg_.background, cfg_.system, trace_rng_);
    const double tf_max = normalizer_.tf_max(cfg_.system, varying ? &traces : nullptr, 0.0);
    Sequence seq = choose();
    const double makespan = varying ? solve_time_varying(cfg_.system, traces, seq).makespan
                                    : solve_time_invariant(cfg_.system, seq).makespan;
    const double reward = normalize_reward(makespan, tf_max);
    const bool r = bernoulli_trial(reward, bernoulli_rng_);
    learn(seq, r);
    normalizer_.observe(makespan);
    records_.push_back({t, std::move(seq), makespan, reward, r, tf_max});
  } catch (const SolverError& e) {
    throw SolverError("trial " + std::to_string(t) + ": " + e.what());
  } catch (const CapacityError& e) {
    throw CapacityError("trial " + std::to_string(t) + ": " + e.what());
  }
  trials_done_ = t;
  return records_.back();
}

void Experiment::run_to(std::size_t trials) {
  while (trials_done_ < trials) step();
}

Recommendation Experiment::recommendation() const {
  switch (cfg_.algorithm) {
    case Algorithm::ts_exhaustive:
      return recommend(*arms_);
    case Algorithm::ts_weights:
    case Algorithm::ts_hillclimb:
      return recommend(*weights_, cfg_.arm_cap);
    case Algorithm::ts_batch:
      return {batch_->current_sequence(), batch_->phases_completed() > 0};
    case Algorithm::random_baseline:
      break;
  }
  return {Sequence::identity(cfg_.system.n_workers()), false};
}

ExperimentState Experiment::state() const {
  ExperimentState s;
  s.algorithm = cfg_.algorithm;
  s.n_workers = cfg_.system.n_workers();
  s.trials_done = trials_done_;
  s.arms = arms_;
  s.weights = weights_;
  if (batch_) s.batch = batch_->state();
  s.max_observed = normalizer_.max_observed();
  s.rng_streams = {{"traces", save_rng_state(trace_rng_)},
                   {"selection", save_rng_state(selection_rng_)},
                   {"bernoulli", save_rng_state(bernoulli_rng_)},
                   {"search", save_rng_state(search_rng_)}};
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  Experiment exp(cfg);
  exp.run_to(cfg.trials);
  return {exp.records(), exp.state(), exp.recommendation()};
}

double cumulative_regret(std::span<const TrialRecord> records, double t_f_star) {
  if (!(t_f_star > 0.0)) throw std::invalid_argument("t_f_star must be positive");
  double sum = 0.0;
  for (const auto& r : records) sum += r.makespan - t_f_star;
  return sum;
}

double windowed_regret(std::span<const TrialRecord> records, double t_f_star, std::size_t t1,
                       std::size_t t2) {
  if (t1 < 1 || t2 < t1 || t2 > records.size()) {
    throw std::out_of_range("window [" + std::to_string(t1) + ", " + std::to_string(t2) +
                            "] outside 1.." + std::to_string(records.size()));
  }
  double sum = 0.0;
  for (std::size_t t = t1; t <= t2; ++t) sum += records[t - 1].makespan - t_f_star;
  return sum / static_cast<double>(t2 - t1 + 1);
}

std::vector<EnumeratedSequence> enumerate_sequences(const SystemConfig& cfg, std::size_t cap) {
  cfg.validate();
  const std::size_t n = cfg.n_workers();
  if (n > cap) {
    throw CapacityError("enumerating " + std::to_string(n) + "! sequences exceeds the cap of " +
                        std::to_string(cap) + " workers");
  }
  std::vector<EnumeratedSequence> out;
  for (auto& seq : all_sequences(n)) {
    const double tf = solve_time_invariant(cfg, seq).makespan;
    out.push_back({std::move(seq), tf});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.makespan < b.makespan; });
  return out;
}

RegretReport regret_report(std::span<const TrialRecord> records, std::size_t window,
                           std::optional<double> t_f_star) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  RegretReport rep;
  rep.t_f_star = t_f_star;
  if (t_f_star) rep.cumulative = cumulative_regret(records, *t_f_star);
  const std::size_t total = records.size();
  window = std::min(window, std::max<std::size_t>(total, 1));
  for (std::size_t first = 1; first <= total; first += window) {
    const std::size_t last = std::min(total, first + window - 1);
    WindowStat w;
    w.first_trial = first;
    w.last_trial = last;
    double sum = 0.0;
    for (std::size_t t = first; t <= last; ++t) sum += records[t - 1].makespan;
    w.mean_makespan = sum / static_cast<double>(last - first + 1);
    if (t_f_star) w.mean_regret = windowed_regret(records, *t_f_star, first, last);
    rep.windows.push_back(w);
  }
  return rep;
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ts_exhaustive: return "ts_exhaustive";
    case Algorithm::ts_weights: return "ts_weights";
    case Algorithm::ts_hillclimb: return "ts_hillclimb";
    case Algorithm::ts_batch: return "ts_batch";
    case Algorithm::random_baseline: return "random_baseline";
  }
  return "unknown";
}

std::string to_string(Mode m) {
  return m == Mode::time_invariant ? "time_invariant" : "time_varying";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::ts_exhaustive, Algorithm::ts_weights, Algorithm::ts_hillclimb,
                 Algorithm::ts_batch, Algorithm::random_baseline}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "time_invariant") return Mode::time_invariant;
  if (s == "time_varying") return Mode::time_varying;
  return std::nullopt;
}

}  // namespace dltbandit
