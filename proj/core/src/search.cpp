#include "dltbandit/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dltbandit/errors.hpp"

namespace dltbandit {

void HillClimbConfig::validate() const {
  if (restarts < 1) throw ConfigError("hill_climb.restarts must be >= 1");
  if (iterations < 1) throw ConfigError("hill_climb.iterations must be >= 1");
}

HillClimbResult hill_climb(std::span<const double> weights, std::size_t n,
                           const HillClimbConfig& cfg, Rng& rng) {
  cfg.validate();
  if (weights.size() != n * n) throw DimensionMismatch("weights must have N*N entries");
  if (n == 0) throw DimensionMismatch("empty system");

  HillClimbResult result;
  result.best_score = std::numeric_limits<double>::infinity();
  auto w = [&](std::size_t position, int worker) { return weights[position * n + worker]; };

  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    Rng local = fork(rng);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), local);
    Sequence current(std::move(order));
    double current_score = score(current, weights);

    std::vector<double> trajectory;
    if (cfg.record_trajectories) trajectory.push_back(current_score);

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<bool> tried(n, false);
    std::size_t tried_count = 0;
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
      const std::size_t p = pick(local);
      std::size_t best_j = p;
      double best_delta = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        ++result.swap_evaluations;
        if (j == p) continue;
        const double delta = w(p, current[j]) + w(j, current[p]) - w(p, current[p]) -
                             w(j, current[j]);
        if (delta < best_delta) {
          best_delta = delta;
          best_j = j;
        }
      }
      bool improved = false;
      if (best_j != p) {
        Sequence candidate = current;
        candidate.swap_positions(p, best_j);
        const double candidate_score = score(candidate, weights);
        if (candidate_score < current_score) {
          current = std::move(candidate);
          current_score = candidate_score;
          improved = true;
        }
      }
      if (cfg.record_trajectories) trajectory.push_back(current_score);
      if (improved) {
        std::fill(tried.begin(), tried.end(), false);
        tried_count = 0;
      } else if (!tried[p]) {
        tried[p] = true;
        ++tried_count;
      }
      if (cfg.early_stop && tried_count == n) break;
    }

    if (current_score < result.best_score ||
        (current_score == result.best_score && current < result.best)) {
      result.best_score = current_score;
      result.best = current;
    }
    if (cfg.record_trajectories) result.trajectories.push_back(std::move(trajectory));
  }
  return result;
}

ScoreMinimizer hill_climb_minimizer(HillClimbConfig cfg) {
  cfg.validate();
  cfg.record_trajectories = false;
  return [cfg](std::span<const double> w, std::size_t n, Rng& rng) {
    return hill_climb(w, n, cfg, rng).best;
  };
}

std::vector<std::vector<int>> partition_batches(std::vector<int> workers, std::size_t b_n,
                                                Rng& rng) {
  if (b_n == 0) throw std::invalid_argument("batch count must be positive");
  if (workers.size() < b_n) {
    throw std::invalid_argument("cannot split " + std::to_string(workers.size()) +
                                " workers into " + std::to_string(b_n) + " batches");
  }
  std::shuffle(workers.begin(), workers.end(), rng);
  const std::size_t base = workers.size() / b_n;
  const std::size_t extra = workers.size() % b_n;
  std::vector<std::vector<int>> batches;
  batches.reserve(b_n);
  auto it = workers.begin();
  for (std::size_t b = 0; b < b_n; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    batches.emplace_back(it, it + static_cast<std::ptrdiff_t>(size));
    it += static_cast<std::ptrdiff_t>(size);
  }
  return batches;
}

void BatchConfig::validate() const {
  if (batch_count < 2) throw ConfigError("batch.batch_count must be >= 2");
  if (leaf_threshold < 2) throw ConfigError("batch.leaf_threshold must be >= 2");
  if (trials_per_phase < 1) throw ConfigError("batch.trials_per_phase must be >= 1");
  if (batch_count > arm_cap || leaf_threshold > arm_cap) {
    throw CapacityError("batch phases enumerate up to max(b_n, b_s)! orders; both must be <= " +
                        std::to_string(arm_cap));
  }
}

namespace {

std::vector<int> identity_order(std::size_t k) {
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

int build_node(std::vector<BatchNode>& nodes, std::vector<int> workers, const BatchConfig& cfg,
               Rng& rng) {
  const int idx = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (workers.size() <= cfg.leaf_threshold) {
    nodes[idx].order = identity_order(workers.size());
    nodes[idx].workers = std::move(workers);
    return idx;
  }
  if (workers.size() < cfg.batch_count) {
    throw ConfigError("a batch of " + std::to_string(workers.size()) +
                      " workers exceeds leaf_threshold but cannot be split into " +
                      std::to_string(cfg.batch_count) + " batches");
  }
  std::vector<int> children;
  for (auto& group : partition_batches(std::move(workers), cfg.batch_count, rng)) {
    children.push_back(build_node(nodes, std::move(group), cfg, rng));
  }
  nodes[idx].order = identity_order(children.size());
  nodes[idx].children = std::move(children);
  return idx;
}

}  // namespace

BatchOptimizer::BatchOptimizer(std::size_t n_workers, const BatchConfig& cfg,
                               Rng& partition_rng) {
  cfg.validate();
  if (n_workers == 0) throw ConfigError("batch optimization needs at least one worker");
  state_.n_workers = n_workers;
  state_.config = cfg;
  std::vector<int> all(n_workers);
  std::iota(all.begin(), all.end(), 0);
  build_node(state_.nodes, std::move(all), cfg, partition_rng);
  state_.pending = {0};
  start_next_phase();
}

BatchOptimizer::BatchOptimizer(BatchState state) : state_(std::move(state)) {
  state_.config.validate();
  if (state_.nodes.empty()) throw ConfigError("batch state has no nodes");
  std::vector<int> seen;
  for (const auto& node : state_.nodes) {
    const std::size_t k = node.item_count();
    auto sorted = node.order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_order(k)) throw ConfigError("batch node order is not a permutation");
    for (int c : node.children) {
      if (c <= 0 || static_cast<std::size_t>(c) >= state_.nodes.size()) {
        throw ConfigError("batch node child out of range");
      }
    }
  }
  const Sequence full = current_sequence();  // validates the worker cover
  if (full.size() != state_.n_workers) throw ConfigError("batch tree does not cover all workers");
  if (state_.active >= 0) {
    if (static_cast<std::size_t>(state_.active) >= state_.nodes.size()) {
      throw ConfigError("active batch node out of range");
    }
    const std::size_t k = state_.nodes[state_.active].item_count();
    if (state_.weights.size() != k * k) throw ConfigError("batch weights have wrong size");
    for (const auto& p : state_.weights) {
      if (!p.proper()) throw ConfigError("batch weight parameters must be positive");
    }
  }
}

void BatchOptimizer::start_next_phase() {
  while (!state_.pending.empty()) {
    const int node = state_.pending.back();
    state_.pending.pop_back();
    const std::size_t k = state_.nodes[node].item_count();
    if (k >= 2) {
      state_.active = node;
      state_.trials_in_phase = 0;
      state_.weights.assign(k * k, BetaParams{});
      state_.candidate.clear();
      return;
    }
  }
  state_.active = -1;
  state_.weights.clear();
  state_.candidate.clear();
}

void BatchOptimizer::expand(int node, const std::vector<int>* override_order, int override_node,
                            std::vector<int>& out) const {
  const BatchNode& nd = state_.nodes[node];
  const auto& order = (node == override_node && override_order) ? *override_order : nd.order;
  for (int i : order) {
    if (nd.leaf()) {
      out.push_back(nd.workers[i]);
    } else {
      expand(nd.children[i], override_order, override_node, out);
    }
  }
}

Sequence BatchOptimizer::current_sequence() const {
  std::vector<int> out;
  out.reserve(state_.n_workers);
  expand(0, nullptr, -1, out);
  return Sequence(std::move(out));
}

Sequence BatchOptimizer::propose(Rng& sample_rng) {
  if (finished()) return current_sequence();
  const std::size_t k = state_.nodes[state_.active].item_count();
  std::vector<double> sampled(k * k);
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    sampled[i] = sample_beta(state_.weights[i].alpha, state_.weights[i].beta, sample_rng);
  }
  state_.candidate = exhaustive_argmin(sampled, k, state_.config.arm_cap).order();
  std::vector<int> out;
  out.reserve(state_.n_workers);
  expand(0, &state_.candidate, state_.active, out);
  return Sequence(std::move(out));
}

void BatchOptimizer::update(bool r) {
  if (finished()) return;
  if (state_.candidate.empty()) throw std::logic_error("update() without propose()");
  const std::size_t k = state_.nodes[state_.active].item_count();
  const SequenceVector sv = encode_sequence(Sequence(state_.candidate));
  for (std::size_t i = 0; i < k * k; ++i) {
    if (sv.entries()[i]) state_.weights[i] = bernoulli_update(state_.weights[i], r);
  }
  state_.candidate.clear();
  if (++state_.trials_in_phase < state_.config.trials_per_phase) return;

  WeightVector trained(k, state_.weights);
  BatchNode& node = state_.nodes[state_.active];
  node.order = recommend(trained, state_.config.arm_cap).sequence.order();
  ++state_.phases_completed;
  if (!node.leaf()) {
    // Front batch on top of the stack.
    for (auto it = node.order.rbegin(); it != node.order.rend(); ++it) {
      state_.pending.push_back(node.children[*it]);
    }
  }
  start_next_phase();
}

std::size_t BatchOptimizer::phase_count() const {
  return static_cast<std::size_t>(std::count_if(
      state_.nodes.begin(), state_.nodes.end(),
      [](const BatchNode& nd) { return nd.item_count() >= 2; }));
}

std::vector<PhaseKind> BatchOptimizer::phase_kinds() const {
  std::vector<PhaseKind> kinds;
  for (const auto& nd : state_.nodes) {
    if (nd.item_count() >= 2) kinds.push_back(nd.leaf() ? PhaseKind::leaf : PhaseKind::batch_sequencing);
  }
  return kinds;
}

Sequence batch_optimize(std::size_t n_workers, const BatchConfig& cfg,
                        const std::function<bool(const Sequence&)>& trial, Rng& partition_rng,
                        Rng& sample_rng) {
  BatchOptimizer opt(n_workers, cfg, partition_rng);
  while (!opt.finished()) {
    const Sequence seq = opt.propose(sample_rng);
    opt.update(trial(seq));
  }
  return opt.current_sequence();
}

}  // namespace dltbandit
