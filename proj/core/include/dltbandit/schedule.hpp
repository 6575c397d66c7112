#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dltbandit/sequence.hpp"
#include "dltbandit/speed_trace.hpp"

namespace dltbandit {

// Single-level tree: control processor P0 distributes one divisible load to
// N workers over a single channel, one worker at a time.
struct SystemConfig {
  std::vector<double> omega;  // inverse compute speed per worker
  std::vector<double> z;      // inverse link speed per worker
  double t_cm = 1.0;          // time to send the whole load at z = 1
  double t_cp = 1.0;          // time to compute the whole load at omega = 1
  bool control_computes = false;
  double omega0 = 1.0;        // only used when control_computes

  std::size_t n_workers() const noexcept { return omega.size(); }

  // Throws ConfigError on non-positive values or size mismatch.
  void validate() const;
};

struct ProcessorTraces {
  SpeedTrace comm;
  SpeedTrace compute;
};

struct SystemTraces {
  std::vector<ProcessorTraces> workers;
  std::optional<SpeedTrace> control_compute;

  // Time-invariant traces at the nominal speeds of `cfg`.
  static SystemTraces constant(const SystemConfig& cfg);
};

// Load fractions and timing, indexed by worker (not by position).
struct ScheduleResult {
  std::vector<double> kappa;
  double control_kappa = 0.0;
  std::vector<double> finish_times;  // absolute time
  std::optional<double> control_finish;
  double release = 0.0;
  double makespan = 0.0;             // T_f measured from release
  std::vector<double> equivalent_omega;
  std::vector<double> equivalent_z;

  double kappa_sum() const;
  // max_i |T_i - (release + makespan)| over participating processors.
  double finish_spread() const;
};

struct FinishTimes {
  std::vector<double> workers;  // indexed by worker
  std::optional<double> control;

  double latest() const;
  double spread() const;
};

// Closed-form optimal partition for constant speeds: every participating
// processor finishes at the same instant.
ScheduleResult solve_time_invariant(const SystemConfig& cfg, const Sequence& seq);

// Event-driven replay of a given allocation. Communication to seq[p] starts
// when communication to seq[p-1] ends; computation starts when reception
// ends. Throws InvalidAllocation if kappa is off the simplex.
FinishTimes simulate_schedule(const SystemConfig& cfg, const SystemTraces& traces,
                              const Sequence& seq, std::span<const double> kappa,
                              double control_kappa = 0.0, double release = 0.0);

struct TimeVaryingOptions {
  double sum_tolerance = 1e-12;  // |sum(kappa) - 1|, relative
  int max_iterations = 10000;    // per root search
};

// Optimal partition for piecewise-constant speeds via nested monotone root
// searches: the first worker's fraction fixes the common finish time, each
// later worker's fraction is the unique one finishing exactly then, and the
// outer search drives the total to 1. Throws SolverError on
// non-convergence.
ScheduleResult solve_time_varying(const SystemConfig& cfg, const SystemTraces& traces,
                                  const Sequence& seq, double release = 0.0,
                                  const TimeVaryingOptions& options = {});

}  // namespace dltbandit
