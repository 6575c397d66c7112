#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dltbandit/bandit.hpp"
#include "dltbandit/random.hpp"
#include "dltbandit/sequence.hpp"

namespace dltbandit {

struct HillClimbConfig {
  std::size_t restarts = 20;     // K
  std::size_t iterations = 500;  // m, one random position per iteration
  bool early_stop = true;
  bool record_trajectories = false;

  void validate() const;
};

struct HillClimbResult {
  Sequence best;
  double best_score = 0.0;
  // Per restart: score of the start sequence followed by the score after
  // each iteration. Only filled when record_trajectories is set.
  std::vector<std::vector<double>> trajectories;
  std::size_t swap_evaluations = 0;
};

// Random-restart steepest-swap descent over the score S_V^T w. Each
// iteration picks a random position and applies the best of its N swaps
// (the identity included). A restart stops early once every position has
// been tried since the last strict improvement.
HillClimbResult hill_climb(std::span<const double> weights, std::size_t n,
                           const HillClimbConfig& cfg, Rng& rng);

ScoreMinimizer hill_climb_minimizer(HillClimbConfig cfg);

// Shuffles `workers` and cuts them into b_n groups; the first
// (|workers| mod b_n) groups get one extra member.
std::vector<std::vector<int>> partition_batches(std::vector<int> workers, std::size_t b_n,
                                                Rng& rng);

struct BatchConfig {
  std::size_t batch_count = 2;          // b_n
  std::size_t leaf_threshold = 4;       // b_s
  std::size_t trials_per_phase = 1000;
  std::size_t arm_cap = kDefaultArmCap;

  void validate() const;

  friend bool operator==(const BatchConfig&, const BatchConfig&) = default;
};

// Grouping of workers. A leaf orders workers directly; an internal node
// orders its child batches. `order` is the current order of the node's
// items (indices into `workers` or `children`).
struct BatchNode {
  std::vector<int> workers;
  std::vector<int> children;
  std::vector<int> order;

  bool leaf() const noexcept { return children.empty(); }
  std::size_t item_count() const noexcept { return leaf() ? workers.size() : children.size(); }

  friend bool operator==(const BatchNode&, const BatchNode&) = default;
};

// Complete resumable state of a batch optimization run.
struct BatchState {
  std::size_t n_workers = 0;
  BatchConfig config;
  std::vector<BatchNode> nodes;         // nodes[0] is the root
  std::vector<int> pending;             // nodes still to train, next at back
  int active = -1;                      // node in training, -1 when done
  std::size_t trials_in_phase = 0;
  std::size_t phases_completed = 0;
  std::vector<BetaParams> weights;      // active node's weight vector
  std::vector<int> candidate;           // order proposed in the last step

  friend bool operator==(const BatchState&, const BatchState&) = default;
};

enum class PhaseKind { batch_sequencing, leaf };

// Recursive batch optimization driven one trial at a time. Phases run in
// depth-first order, front batch first, and a finished phase is never
// revisited. Once every phase is done the learned sequence is replayed.
class BatchOptimizer {
 public:
  BatchOptimizer(std::size_t n_workers, const BatchConfig& cfg, Rng& partition_rng);
  explicit BatchOptimizer(BatchState state);

  // Full sequence for this trial. While training, samples the active
  // phase's weights and orders the active node by exhaustive argmin.
  Sequence propose(Rng& sample_rng);
  void update(bool r);

  // The sequence implied by every node's current order.
  Sequence current_sequence() const;

  bool finished() const noexcept { return state_.active < 0; }
  std::size_t phase_count() const;
  std::size_t phases_completed() const noexcept { return state_.phases_completed; }
  std::vector<PhaseKind> phase_kinds() const;

  const BatchState& state() const noexcept { return state_; }

 private:
  void start_next_phase();
  void expand(int node, const std::vector<int>* override_order, int override_node,
              std::vector<int>& out) const;

  BatchState state_;
};

// Runs a BatchOptimizer to completion. `trial` executes one schedule for
// the given sequence and returns the Bernoulli outcome.
Sequence batch_optimize(std::size_t n_workers, const BatchConfig& cfg,
                        const std::function<bool(const Sequence&)>& trial,
                        Rng& partition_rng, Rng& sample_rng);

}  // namespace dltbandit
