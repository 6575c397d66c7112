#pragma once

#include <cstdint>
#include <vector>

namespace dltbandit {

enum class HorizonBehavior { hold_last, cycle };

// Piecewise-constant inverse speed of one shared resource (a channel or a
// CPU). On [breakpoints[j], breakpoints[j+1]) the resource is shared by
// multiplicities[j] jobs, and an even hypervisor split makes the effective
// inverse speed multiplicities[j] * base_inverse_speed.
//
// Past the last breakpoint the trace either holds its last value forever or
// repeats the window [0, horizon) periodically.
class SpeedTrace {
 public:
  SpeedTrace(std::vector<double> breakpoints,
             std::vector<std::int64_t> multiplicities,
             double base_inverse_speed,
             HorizonBehavior behavior = HorizonBehavior::hold_last,
             double horizon = 0.0);

  static SpeedTrace constant(double inverse_speed);

  double inverse_speed_at(double t) const;

  // Amount of work (load x nominal-time units) completed over [0, t],
  // i.e. the integral of 1 / inverse_speed.
  double work(double t) const;

  // Smallest t with work(t) == w.
  double time_for_work(double w) const;

  // Time at which `amount` of work started at `start` completes.
  double advance(double start, double amount) const;

  // Minimum and maximum inverse speed reached on [t_m, t_n].
  double min_inverse_speed(double t_m, double t_n) const;
  double max_inverse_speed(double t_m, double t_n) const;

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<std::int64_t>& multiplicities() const noexcept { return multiplicities_; }
  double base_inverse_speed() const noexcept { return base_; }
  HorizonBehavior behavior() const noexcept { return behavior_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t segment_count() const noexcept { return breakpoints_.size(); }

  friend bool operator==(const SpeedTrace&, const SpeedTrace&) = default;

 private:
  double segment_inverse_speed(std::size_t j) const {
    return static_cast<double>(multiplicities_[j]) * base_;
  }
  std::size_t segment_index(double t_in_window) const;
  double work_in_window(double t) const;
  double time_in_window(double w) const;

  std::vector<double> breakpoints_;
  std::vector<std::int64_t> multiplicities_;
  double base_ = 1.0;
  HorizonBehavior behavior_ = HorizonBehavior::hold_last;
  double horizon_ = 0.0;
  // cumulative_work_[j] = work(breakpoints_[j]); one extra entry at horizon_
  // when cycling.
  std::vector<double> cumulative_work_;
  double period_work_ = 0.0;
};

// (t_n - t_m) / integral_{t_m}^{t_n} 1/inverse_speed(t) dt, exact over the
// piecewise-constant segments. Throws DegenerateInterval if t_n <= t_m.
double equivalent_inverse_speed(const SpeedTrace& trace, double t_m, double t_n);

}  // namespace dltbandit
