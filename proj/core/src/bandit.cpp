#include "dltbandit/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dltbandit/errors.hpp"

namespace dltbandit {

BetaParams bernoulli_update(BetaParams params, bool r) {
  if (r) {
    params.alpha += 1.0;
  } else {
    params.beta += 1.0;
  }
  return params;
}

SequenceVector::SequenceVector(std::size_t n, std::vector<std::uint8_t> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw DimensionMismatch("sequence vector must have N*N entries");
  (void)decode();
}

Sequence SequenceVector::decode() const {
  std::vector<int> order(n_, -1);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint8_t bit = at(i, j);
      if (bit > 1) throw std::invalid_argument("sequence vector entries must be 0 or 1");
      if (bit == 1) {
        if (order[i] != -1) throw std::invalid_argument("subvector has more than one 1");
        order[i] = static_cast<int>(j);
      }
    }
    if (order[i] == -1) throw std::invalid_argument("subvector has no 1");
  }
  return Sequence(std::move(order));
}

SequenceVector encode_sequence(const Sequence& seq) {
  const std::size_t n = seq.size();
  std::vector<std::uint8_t> bits(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) bits[i * n + seq[i]] = 1;
  return SequenceVector(n, std::move(bits));
}

double score(const SequenceVector& sv, std::span<const double> w) {
  if (w.size() != sv.entries().size()) {
    throw DimensionMismatch("weights have " + std::to_string(w.size()) + " entries, expected " +
                            std::to_string(sv.entries().size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sv.entries()[i]) s += w[i];
  }
  return s;
}

double score(const Sequence& seq, std::span<const double> w) {
  const std::size_t n = seq.size();
  if (w.size() != n * n) {
    throw DimensionMismatch("weights have " + std::to_string(w.size()) + " entries, expected " +
                            std::to_string(n * n));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i * n + seq[i]];
  return s;
}

// --- ArmTable --------------------------------------------------------------

ArmTable::ArmTable(std::size_t n_workers, BetaParams prior, std::size_t cap)
    : n_(n_workers), prior_(prior), cap_(cap) {
  if (n_ == 0) throw ConfigError("arm table needs at least one worker");
  if (!prior_.proper()) {
    throw ConfigError("arm prior must have alpha > 0 and beta > 0");
  }
}

const BetaParams& ArmTable::params(const Sequence& seq) const {
  auto it = arms_.find(seq);
  return it == arms_.end() ? prior_ : it->second;
}

void ArmTable::update(const Sequence& seq, bool r) {
  if (seq.size() != n_) throw DimensionMismatch("sequence length does not match arm table");
  auto [it, inserted] = arms_.try_emplace(seq, prior_);
  it->second = bernoulli_update(it->second, r);
}

void ArmTable::set(const Sequence& seq, BetaParams params) {
  if (seq.size() != n_) throw DimensionMismatch("sequence length does not match arm table");
  if (!params.proper()) throw ConfigError("arm parameters must be positive");
  arms_[seq] = params;
}

Sequence select_arm_exhaustive(const ArmTable& table, Rng& rng) {
  const std::size_t n = table.n_workers();
  if (n > table.cap()) {
    throw CapacityError(std::to_string(n) + "! arms exceed the cap of " +
                        std::to_string(table.cap()) +
                        " workers; use the weighted hill-climb or batch algorithms");
  }
  // std::map iterates in the same lexicographic order as next_permutation.
  auto touched = table.touched().begin();
  const auto touched_end = table.touched().end();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best;
  double best_sample = std::numeric_limits<double>::infinity();
  do {
    const BetaParams* p = &table.prior();
    if (touched != touched_end && touched->first.order() == order) {
      p = &touched->second;
      ++touched;
    }
    const double s = sample_beta(p->alpha, p->beta, rng);
    if (s < best_sample) {
      best_sample = s;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return Sequence(std::move(best));
}

// --- WeightVector ----------------------------------------------------------

WeightVector::WeightVector(std::size_t n_workers, BetaParams prior)
    : n_(n_workers), prior_(prior), params_(n_workers * n_workers, prior) {
  if (n_ == 0) throw ConfigError("weight vector needs at least one worker");
  if (!prior_.proper()) throw ConfigError("weight prior must have alpha > 0 and beta > 0");
}

WeightVector::WeightVector(std::size_t n_workers, std::vector<BetaParams> params,
                           BetaParams prior)
    : n_(n_workers), prior_(prior), params_(std::move(params)) {
  if (n_ == 0) throw ConfigError("weight vector needs at least one worker");
  if (params_.size() != n_ * n_) {
    throw ConfigError("weight vector must have " + std::to_string(n_ * n_) + " entries");
  }
  for (const auto& p : params_) {
    if (!p.proper()) throw ConfigError("weight parameters must be positive");
  }
}

std::vector<double> WeightVector::sample(Rng& rng) const {
  std::vector<double> w(params_.size());
  for (std::size_t i = 0; i < params_.size(); ++i) {
    w[i] = sample_beta(params_[i].alpha, params_[i].beta, rng);
  }
  return w;
}

std::vector<double> WeightVector::means() const {
  std::vector<double> m(params_.size());
  for (std::size_t i = 0; i < params_.size(); ++i) m[i] = params_[i].mean();
  return m;
}

void WeightVector::update(const SequenceVector& sv, bool r) {
  if (sv.n() != n_) throw DimensionMismatch("sequence vector does not match weight vector");
  const auto bits = sv.entries();
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (bits[i]) params_[i] = bernoulli_update(params_[i], r);
  }
}

bool WeightVector::untrained() const {
  return std::all_of(params_.begin(), params_.end(),
                     [&](const BetaParams& p) { return p == prior_; });
}

WeightVector update_weighted(WeightVector w, const SequenceVector& sv, bool r) {
  w.update(sv, r);
  return w;
}

Sequence exhaustive_argmin(std::span<const double> weights, std::size_t n, std::size_t cap) {
  if (weights.size() != n * n) throw DimensionMismatch("weights must have N*N entries");
  if (n > cap) {
    throw CapacityError("exhaustive search over " + std::to_string(n) +
                        "! sequences exceeds the cap of " + std::to_string(cap) + " workers");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best = order;
  double best_score = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += weights[i * n + order[i]];
    if (s < best_score) {
      best_score = s;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return Sequence(std::move(best));
}

ScoreMinimizer exhaustive_minimizer(std::size_t cap) {
  return [cap](std::span<const double> w, std::size_t n, Rng&) {
    return exhaustive_argmin(w, n, cap);
  };
}

WeightedSelection select_arm_weighted(const WeightVector& w, const ScoreMinimizer& minimizer,
                                      Rng& sample_rng, Rng& search_rng) {
  WeightedSelection sel;
  sel.weights = w.sample(sample_rng);
  sel.sequence = minimizer(sel.weights, w.n_workers(), search_rng);
  sel.score = score(sel.sequence, sel.weights);
  return sel;
}

Sequence min_cost_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) throw DimensionMismatch("cost matrix must be n x n");
  // Shortest augmenting path with potentials, 1-based internally.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = cost[(r0 - 1) * n + (c - 1)] - u[r0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> order(n);
  for (std::size_t c = 1; c <= n; ++c) order[match[c] - 1] = static_cast<int>(c - 1);
  return Sequence(std::move(order));
}

Recommendation recommend(const WeightVector& w, std::size_t cap) {
  const std::size_t n = w.n_workers();
  if (w.untrained()) return {Sequence::identity(n), false};
  const auto means = w.means();
  if (n <= cap) return {exhaustive_argmin(means, n, cap), true};
  return {min_cost_assignment(means, n), true};
}

Recommendation recommend(const ArmTable& table) {
  const std::size_t n = table.n_workers();
  if (table.touched().empty()) return {Sequence::identity(n), false};
  if (n > table.cap()) {
    throw CapacityError("cannot rank " + std::to_string(n) + "! arms");
  }
  Sequence best;
  double best_mean = std::numeric_limits<double>::infinity();
  for (auto& seq : all_sequences(n)) {
    const double m = table.params(seq).mean();
    if (m < best_mean) {
      best_mean = m;
      best = seq;
    }
  }
  return {best, true};
}

// --- RewardNormalizer ------------------------------------------------------

RewardNormalizer::RewardNormalizer(NormalizerStrategy strategy, double fixed_value)
    : strategy_(strategy), fixed_value_(fixed_value) {
  if (strategy_ == NormalizerStrategy::fixed_bound &&
      !(fixed_value_ > 0.0 && std::isfinite(fixed_value_))) {
    throw ConfigError("fixed_bound normalizer needs a positive value");
  }
}

double RewardNormalizer::tf_max(const SystemConfig& cfg, const SystemTraces* traces,
                                double release) const {
  if (strategy_ == NormalizerStrategy::fixed_bound) return fixed_value_;
  if (strategy_ == NormalizerStrategy::adaptive_max_observed && max_observed_) {
    return *max_observed_;
  }
  if (traces == nullptr) {
    const double z_max = *std::max_element(cfg.z.begin(), cfg.z.end());
    const double w_max = *std::max_element(cfg.omega.begin(), cfg.omega.end());
    return cfg.t_cm * z_max + cfg.t_cp * w_max;
  }
  double comm = 0.0;
  double compute = 0.0;
  for (const auto& tr : traces->workers) {
    comm = std::max(comm, tr.comm.advance(release, cfg.t_cm) - release);
    compute = std::max(compute, tr.compute.advance(release, cfg.t_cp) - release);
  }
  return comm + compute;
}

void RewardNormalizer::observe(double makespan) {
  if (!max_observed_ || makespan > *max_observed_) max_observed_ = makespan;
}

double normalize_reward(double tf, double tf_max) {
  if (!(tf > 0.0) || !(tf_max > 0.0) || !std::isfinite(tf) || !std::isfinite(tf_max)) {
    throw std::invalid_argument("finishing times must be positive");
  }
  return std::min(tf / tf_max, 1.0);
}

}  // namespace dltbandit
