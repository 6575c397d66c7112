#include "dltbandit/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dltbandit/errors.hpp"
#include "dltbandit/root_finding.hpp"

namespace dltbandit {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void check_sequence(const SystemConfig& cfg, const Sequence& seq) {
  if (seq.size() != cfg.n_workers()) {
    throw DimensionMismatch("sequence has " + std::to_string(seq.size()) +
                            " workers, system has " + std::to_string(cfg.n_workers()));
  }
}

void check_traces(const SystemConfig& cfg, const SystemTraces& traces) {
  if (traces.workers.size() != cfg.n_workers()) {
    throw DimensionMismatch("traces cover " + std::to_string(traces.workers.size()) +
                            " workers, system has " + std::to_string(cfg.n_workers()));
  }
}

SpeedTrace control_trace(const SystemConfig& cfg, const SystemTraces& traces) {
  return traces.control_compute ? *traces.control_compute : SpeedTrace::constant(cfg.omega0);
}

}  // namespace

void SystemConfig::validate() const {
  if (omega.empty()) throw ConfigError("system needs at least one worker");
  if (omega.size() != z.size()) {
    throw ConfigError("omega and z must have the same length");
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!positive_finite(omega[i])) {
      throw ConfigError("omega[" + std::to_string(i) + "] must be positive");
    }
    if (!positive_finite(z[i])) throw ConfigError("z[" + std::to_string(i) + "] must be positive");
  }
  if (!positive_finite(t_cm)) throw ConfigError("t_cm must be positive");
  if (!positive_finite(t_cp)) throw ConfigError("t_cp must be positive");
  if (control_computes && !positive_finite(omega0)) {
    throw ConfigError("omega0 must be positive");
  }
}

SystemTraces SystemTraces::constant(const SystemConfig& cfg) {
  SystemTraces t;
  t.workers.reserve(cfg.n_workers());
  for (std::size_t i = 0; i < cfg.n_workers(); ++i) {
    t.workers.push_back({SpeedTrace::constant(cfg.z[i]), SpeedTrace::constant(cfg.omega[i])});
  }
  if (cfg.control_computes) t.control_compute = SpeedTrace::constant(cfg.omega0);
  return t;
}

double ScheduleResult::kappa_sum() const {
  double s = control_kappa;
  for (double k : kappa) s += k;
  return s;
}

double ScheduleResult::finish_spread() const {
  const double tf = release + makespan;
  double spread = 0.0;
  for (double t : finish_times) spread = std::max(spread, std::fabs(t - tf));
  if (control_finish && control_kappa > 0.0) {
    spread = std::max(spread, std::fabs(*control_finish - tf));
  }
  return spread;
}

double FinishTimes::latest() const {
  double m = control.value_or(-INFINITY);
  for (double t : workers) m = std::max(m, t);
  return m;
}

double FinishTimes::spread() const {
  double lo = control.value_or(INFINITY);
  double hi = control.value_or(-INFINITY);
  for (double t : workers) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

ScheduleResult solve_time_invariant(const SystemConfig& cfg, const Sequence& seq) {
  cfg.validate();
  check_sequence(cfg, seq);
  const std::size_t n = cfg.n_workers();

  // Unnormalized fractions by position, first worker = 1. Consecutive
  // workers finish together iff
  //   k[p] (z[p] T_cm + w[p] T_cp) = k[p-1] w[p-1] T_cp.
  std::vector<double> by_position(n);
  by_position[0] = 1.0;
  for (std::size_t p = 1; p < n; ++p) {
    const int prev = seq[p - 1];
    const int cur = seq[p];
    by_position[p] = by_position[p - 1] * cfg.omega[prev] * cfg.t_cp /
                     (cfg.z[cur] * cfg.t_cm + cfg.omega[cur] * cfg.t_cp);
  }
  double control = 0.0;
  if (cfg.control_computes) {
    const int first = seq[0];
    control = (cfg.z[first] * cfg.t_cm + cfg.omega[first] * cfg.t_cp) / (cfg.omega0 * cfg.t_cp);
  }
  double total = control;
  for (double v : by_position) total += v;

  ScheduleResult r;
  r.kappa.assign(n, 0.0);
  r.finish_times.assign(n, 0.0);
  r.control_kappa = control / total;
  for (std::size_t p = 0; p < n; ++p) r.kappa[seq[p]] = by_position[p] / total;

  double clock = 0.0;
  double latest = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const int w = seq[p];
    clock += r.kappa[w] * cfg.z[w] * cfg.t_cm;
    r.finish_times[w] = clock + r.kappa[w] * cfg.omega[w] * cfg.t_cp;
    latest = std::max(latest, r.finish_times[w]);
  }
  if (cfg.control_computes) {
    r.control_finish = r.control_kappa * cfg.omega0 * cfg.t_cp;
    latest = std::max(latest, *r.control_finish);
  }
  r.makespan = latest;
  r.equivalent_omega = cfg.omega;
  r.equivalent_z = cfg.z;
  return r;
}

FinishTimes simulate_schedule(const SystemConfig& cfg, const SystemTraces& traces,
                              const Sequence& seq, std::span<const double> kappa,
                              double control_kappa, double release) {
  check_sequence(cfg, seq);
  check_traces(cfg, traces);
  if (kappa.size() != cfg.n_workers()) {
    throw DimensionMismatch("kappa has wrong length");
  }
  double sum = control_kappa;
  for (double k : kappa) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidAllocation("negative load fraction");
    sum += k;
  }
  if (!(control_kappa >= 0.0)) throw InvalidAllocation("negative control fraction");
  if (control_kappa > 0.0 && !cfg.control_computes) {
    throw InvalidAllocation("control processor does not compute");
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw InvalidAllocation("load fractions sum to " + std::to_string(sum));
  }

  FinishTimes out;
  out.workers.assign(cfg.n_workers(), 0.0);
  double clock = release;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const int w = seq[p];
    const auto& tr = traces.workers[w];
    const double received = tr.comm.advance(clock, kappa[w] * cfg.t_cm);
    out.workers[w] = tr.compute.advance(received, kappa[w] * cfg.t_cp);
    clock = received;
  }
  if (cfg.control_computes) {
    out.control = control_trace(cfg, traces).advance(release, control_kappa * cfg.t_cp);
  }
  return out;
}

namespace {

constexpr double kFractionTolerance = 4e-16;

// Fractions by position given the first worker's fraction. Returns the sum
// including the control processor.
class TimeVaryingAllocator {
 public:
  TimeVaryingAllocator(const SystemConfig& cfg, const SystemTraces& traces, const Sequence& seq,
                       double release, int max_iterations)
      : cfg_(cfg),
        traces_(traces),
        seq_(seq),
        release_(release),
        max_iterations_(max_iterations),
        control_(control_trace(cfg, traces)) {}

  double allocate(double first, std::vector<double>& by_position, double& control) const {
    const std::size_t n = seq_.size();
    by_position.assign(n, 0.0);
    const auto& head = traces_.workers[seq_[0]];
    double clock = head.comm.advance(release_, first * cfg_.t_cm);
    const double finish = head.compute.advance(clock, first * cfg_.t_cp);
    by_position[0] = first;
    double sum = first;

    for (std::size_t p = 1; p < n; ++p) {
      const auto& tr = traces_.workers[seq_[p]];
      const double target = tr.compute.work(finish);
      const double start = clock;
      auto gap = [&](double k) {
        return tr.compute.work(tr.comm.advance(start, k * cfg_.t_cm)) + k * cfg_.t_cp - target;
      };
      const double g0 = tr.compute.work(start) - target;
      if (g0 >= 0.0) continue;  // no time left before the common finish
      double hi = 1.0;
      double g_hi = gap(hi);
      for (int doubling = 0; g_hi < 0.0; ++doubling) {
        if (doubling > 1000) throw SolverError("no bracket for load fraction");
        hi *= 2.0;
        g_hi = gap(hi);
      }
      const RootResult root =
          find_monotone_root(gap, 0.0, hi, g0, g_hi, kFractionTolerance, 0.0, max_iterations_);
      if (!root.converged) {
        throw SolverError("inner load-fraction search did not converge for worker " +
                          std::to_string(seq_[p] + 1));
      }
      by_position[p] = root.x;
      sum += root.x;
      clock = tr.comm.advance(start, root.x * cfg_.t_cm);
    }

    control = 0.0;
    if (cfg_.control_computes) {
      control = (control_.work(finish) - control_.work(release_)) / cfg_.t_cp;
      sum += control;
    }
    return sum;
  }

 private:
  const SystemConfig& cfg_;
  const SystemTraces& traces_;
  const Sequence& seq_;
  double release_;
  int max_iterations_;
  SpeedTrace control_;
};

}  // namespace

ScheduleResult solve_time_varying(const SystemConfig& cfg, const SystemTraces& traces,
                                  const Sequence& seq, double release,
                                  const TimeVaryingOptions& options) {
  cfg.validate();
  check_sequence(cfg, seq);
  check_traces(cfg, traces);
  if (!(release >= 0.0)) throw std::invalid_argument("release time must be non-negative");

  const TimeVaryingAllocator alloc(cfg, traces, seq, release, options.max_iterations);
  std::vector<double> by_position;
  double control = 0.0;

  auto excess = [&](double first) { return alloc.allocate(first, by_position, control) - 1.0; };
  const double at_one = excess(1.0);
  double first = 1.0;
  if (at_one > options.sum_tolerance) {
    const RootResult root = find_monotone_root(excess, 0.0, 1.0, -1.0, at_one, 1e-16,
                                               options.sum_tolerance, options.max_iterations);
    if (!root.converged) {
      throw SolverError("outer load-fraction search did not converge after " +
                        std::to_string(root.iterations) + " iterations");
    }
    first = root.x;
  }
  const double sum = alloc.allocate(first, by_position, control);
  if (!(std::fabs(sum - 1.0) <= 1e-10) || !std::isfinite(sum)) {
    throw SolverError("load fractions sum to " + std::to_string(sum));
  }

  ScheduleResult r;
  r.release = release;
  r.kappa.assign(cfg.n_workers(), 0.0);
  for (std::size_t p = 0; p < seq.size(); ++p) r.kappa[seq[p]] = by_position[p];
  r.control_kappa = control;

  r.finish_times.assign(cfg.n_workers(), 0.0);
  r.equivalent_omega.assign(cfg.n_workers(), 0.0);
  r.equivalent_z.assign(cfg.n_workers(), 0.0);
  double clock = release;
  double latest = release;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const int w = seq[p];
    const auto& tr = traces.workers[w];
    const double received = tr.comm.advance(clock, r.kappa[w] * cfg.t_cm);
    const double finish = tr.compute.advance(received, r.kappa[w] * cfg.t_cp);
    r.equivalent_z[w] = received > clock ? equivalent_inverse_speed(tr.comm, clock, received)
                                         : tr.comm.inverse_speed_at(clock);
    r.equivalent_omega[w] = finish > received
                                ? equivalent_inverse_speed(tr.compute, received, finish)
                                : tr.compute.inverse_speed_at(received);
    r.finish_times[w] = finish;
    latest = std::max(latest, finish);
    clock = received;
  }
  if (cfg.control_computes) {
    r.control_finish = control_trace(cfg, traces).advance(release, control * cfg.t_cp);
    latest = std::max(latest, *r.control_finish);
  }
  r.makespan = latest - release;
  return r;
}

}  // namespace dltbandit
