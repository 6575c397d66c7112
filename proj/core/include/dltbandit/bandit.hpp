#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dltbandit/random.hpp"
#include "dltbandit/schedule.hpp"
#include "dltbandit/sequence.hpp"

namespace dltbandit {

inline constexpr std::size_t kDefaultArmCap = 8;

// Beta posterior over a latent Bernoulli mean. Here the mean models the
// normalized finishing time, so smaller is better.
struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha / (alpha + beta); }
  bool valid() const { return alpha >= 0.0 && beta >= 0.0; }
  // Usable as a sampling prior.
  bool proper() const { return alpha > 0.0 && beta > 0.0; }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

// r == true adds one to alpha, otherwise one to beta.
BetaParams bernoulli_update(BetaParams params, bool r);

// N*N one-hot encoding of a sequence: subvector i marks the worker that is
// i-th to receive load, so entry (i * N + j) is 1 iff seq[i] == j.
class SequenceVector {
 public:
  SequenceVector() = default;
  SequenceVector(std::size_t n, std::vector<std::uint8_t> entries);

  std::size_t n() const noexcept { return n_; }
  std::span<const std::uint8_t> entries() const noexcept { return entries_; }
  std::uint8_t at(std::size_t position, std::size_t worker) const {
    return entries_[position * n_ + worker];
  }

  // Throws std::invalid_argument if the bits do not encode a permutation.
  Sequence decode() const;

  friend bool operator==(const SequenceVector&, const SequenceVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> entries_;
};

SequenceVector encode_sequence(const Sequence& seq);

// Inner product S_V^T W. Throws DimensionMismatch unless w has N*N entries.
double score(const SequenceVector& sv, std::span<const double> w);
// Same value without materializing the encoding.
double score(const Sequence& seq, std::span<const double> w);

// Per-sequence Beta arms. Arms are created lazily; an untouched arm holds
// the prior.
class ArmTable {
 public:
  // Throws ConfigError for an improper prior (alpha or beta == 0).
  explicit ArmTable(std::size_t n_workers, BetaParams prior = {},
                    std::size_t cap = kDefaultArmCap);

  std::size_t n_workers() const noexcept { return n_; }
  std::size_t cap() const noexcept { return cap_; }
  const BetaParams& prior() const noexcept { return prior_; }

  const BetaParams& params(const Sequence& seq) const;
  void update(const Sequence& seq, bool r);
  // Replace an arm's parameters (snapshot restore). Validates them.
  void set(const Sequence& seq, BetaParams params);

  const std::map<Sequence, BetaParams>& touched() const noexcept { return arms_; }

  friend bool operator==(const ArmTable&, const ArmTable&) = default;

 private:
  std::size_t n_;
  BetaParams prior_;
  std::size_t cap_;
  std::map<Sequence, BetaParams> arms_;
};

// Thompson step over all N! arms: one Beta draw per arm in lexicographic
// order, argmin wins, ties go to the lexicographically smaller sequence.
// Throws CapacityError when N exceeds the table cap.
Sequence select_arm_exhaustive(const ArmTable& table, Rng& rng);

// One Beta(alpha, beta) entry per position/worker pair.
class WeightVector {
 public:
  explicit WeightVector(std::size_t n_workers, BetaParams prior = {});
  WeightVector(std::size_t n_workers, std::vector<BetaParams> params,
               BetaParams prior = {});

  std::size_t n_workers() const noexcept { return n_; }
  const std::vector<BetaParams>& params() const noexcept { return params_; }
  const BetaParams& prior() const noexcept { return prior_; }

  std::vector<double> sample(Rng& rng) const;
  std::vector<double> means() const;
  // Bernoulli update on every entry the encoding selects; others untouched.
  void update(const SequenceVector& sv, bool r);
  bool untrained() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::size_t n_;
  BetaParams prior_;
  std::vector<BetaParams> params_;
};

WeightVector update_weighted(WeightVector w, const SequenceVector& sv, bool r);

// Returns the score-minimizing sequence for the given weights.
using ScoreMinimizer =
    std::function<Sequence(std::span<const double> weights, std::size_t n, Rng& rng)>;

// Exact argmin over all N! sequences, lexicographic tie-break.
Sequence exhaustive_argmin(std::span<const double> weights, std::size_t n,
                           std::size_t cap = kDefaultArmCap);
ScoreMinimizer exhaustive_minimizer(std::size_t cap = kDefaultArmCap);

struct WeightedSelection {
  Sequence sequence;
  std::vector<double> weights;
  double score = 0.0;
};

// Samples all N*N weights from `sample_rng`, then minimizes the score with
// `minimizer` (which draws from `search_rng`).
WeightedSelection select_arm_weighted(const WeightVector& w, const ScoreMinimizer& minimizer,
                                      Rng& sample_rng, Rng& search_rng);

// Exact minimum-cost assignment of positions to workers for an n x n cost
// matrix in row-major (position, worker) layout.
Sequence min_cost_assignment(std::span<const double> cost, std::size_t n);

struct Recommendation {
  Sequence sequence;
  bool trained = false;
};

// Deterministic final pick at posterior means. Untrained state yields the
// identity sequence with trained == false. For N above `cap` the weighted
// recommendation is solved as an assignment problem instead of enumerated.
Recommendation recommend(const WeightVector& w, std::size_t cap = kDefaultArmCap);
Recommendation recommend(const ArmTable& table);

enum class NormalizerStrategy { single_processor_estimate, fixed_bound, adaptive_max_observed };

// Produces T_f^max for the current trial and maps T_f into [0, 1].
class RewardNormalizer {
 public:
  RewardNormalizer() = default;
  explicit RewardNormalizer(NormalizerStrategy strategy, double fixed_value = 0.0);

  NormalizerStrategy strategy() const noexcept { return strategy_; }
  double fixed_value() const noexcept { return fixed_value_; }

  // With no traces, the single-processor estimate is
  // T_cm * max z + T_cp * max omega at nominal speeds. With traces it is the
  // slowest full-load transfer plus the slowest full-load computation, both
  // started at `release`. adaptive_max_observed falls back to that estimate
  // until the first observation.
  double tf_max(const SystemConfig& cfg, const SystemTraces* traces = nullptr,
                double release = 0.0) const;

  void observe(double makespan);
  std::optional<double> max_observed() const noexcept { return max_observed_; }
  void set_max_observed(std::optional<double> v) { max_observed_ = v; }

 private:
  NormalizerStrategy strategy_ = NormalizerStrategy::single_processor_estimate;
  double fixed_value_ = 0.0;
  std::optional<double> max_observed_;
};

// min(tf / tf_max, 1). Throws std::invalid_argument on non-positive input.
double normalize_reward(double tf, double tf_max);

}  // namespace dltbandit
