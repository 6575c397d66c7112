#include "dltbandit/speed_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dltbandit/errors.hpp"

namespace dltbandit {

SpeedTrace::SpeedTrace(std::vector<double> breakpoints,
                       std::vector<std::int64_t> multiplicities,
                       double base_inverse_speed, HorizonBehavior behavior, double horizon)
    : breakpoints_(std::move(breakpoints)),
      multiplicities_(std::move(multiplicities)),
      base_(base_inverse_speed),
      behavior_(behavior),
      horizon_(horizon) {
  if (breakpoints_.empty() || breakpoints_.front() != 0.0) {
    throw std::invalid_argument("speed trace must start at t = 0");
  }
  if (breakpoints_.size() != multiplicities_.size()) {
    throw std::invalid_argument("speed trace needs one multiplicity per breakpoint");
  }
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] > breakpoints_[j - 1]) || !std::isfinite(breakpoints_[j])) {
      throw std::invalid_argument("speed trace breakpoints must be strictly increasing");
    }
  }
  for (auto k : multiplicities_) {
    if (k < 1) throw std::invalid_argument("multiplicity must be >= 1");
  }
  if (!(base_ > 0.0) || !std::isfinite(base_)) {
    throw std::invalid_argument("base inverse speed must be positive");
  }
  if (behavior_ == HorizonBehavior::cycle) {
    if (!(horizon_ > breakpoints_.back()) || !std::isfinite(horizon_)) {
      throw std::invalid_argument("cycling trace needs horizon beyond the last breakpoint");
    }
  } else {
    horizon_ = std::max(horizon_, breakpoints_.back());
  }

  cumulative_work_.resize(breakpoints_.size());
  cumulative_work_[0] = 0.0;
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    cumulative_work_[j] = cumulative_work_[j - 1] +
                          (breakpoints_[j] - breakpoints_[j - 1]) / segment_inverse_speed(j - 1);
  }
  if (behavior_ == HorizonBehavior::cycle) {
    const std::size_t last = breakpoints_.size() - 1;
    period_work_ = cumulative_work_[last] +
                   (horizon_ - breakpoints_[last]) / segment_inverse_speed(last);
  }
}

SpeedTrace SpeedTrace::constant(double inverse_speed) {
  return SpeedTrace({0.0}, {1}, inverse_speed);
}

std::size_t SpeedTrace::segment_index(double t_in_window) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t_in_window);
  return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

double SpeedTrace::work_in_window(double t) const {
  const std::size_t j = segment_index(t);
  return cumulative_work_[j] + (t - breakpoints_[j]) / segment_inverse_speed(j);
}

double SpeedTrace::time_in_window(double w) const {
  auto it = std::upper_bound(cumulative_work_.begin(), cumulative_work_.end(), w);
  const std::size_t j = static_cast<std::size_t>(std::distance(cumulative_work_.begin(), it)) - 1;
  return breakpoints_[j] + (w - cumulative_work_[j]) * segment_inverse_speed(j);
}

double SpeedTrace::inverse_speed_at(double t) const {
  if (t < 0.0) throw std::invalid_argument("negative time");
  if (behavior_ == HorizonBehavior::cycle) t = std::fmod(t, horizon_);
  return segment_inverse_speed(segment_index(t));
}

double SpeedTrace::work(double t) const {
  if (t < 0.0) throw std::invalid_argument("negative time");
  if (behavior_ == HorizonBehavior::hold_last) return work_in_window(t);
  double q = std::floor(t / horizon_);
  double r = t - q * horizon_;
  if (r >= horizon_) {
    q += 1.0;
    r = 0.0;
  }
  return q * period_work_ + work_in_window(std::max(r, 0.0));
}

double SpeedTrace::time_for_work(double w) const {
  if (w < 0.0) throw std::invalid_argument("negative work");
  if (behavior_ == HorizonBehavior::hold_last) return time_in_window(w);
  double q = std::floor(w / period_work_);
  double r = w - q * period_work_;
  if (r >= period_work_) {
    q += 1.0;
    r = 0.0;
  }
  return q * horizon_ + time_in_window(std::max(r, 0.0));
}

double SpeedTrace::advance(double start, double amount) const {
  if (amount <= 0.0) return start;
  return std::max(start, time_for_work(work(start) + amount));
}

namespace {

template <typename Pick>
double scan_inverse_speed(const SpeedTrace& trace, double t_m, double t_n, Pick pick) {
  if (!(t_n > t_m)) throw DegenerateInterval("empty interval");
  const auto& bp = trace.breakpoints();
  const bool cyc = trace.behavior() == HorizonBehavior::cycle;
  const double h = trace.horizon();
  double best = trace.inverse_speed_at(t_m);
  double cur = t_m;
  while (cur < t_n) {
    best = pick(best, trace.inverse_speed_at(cur));
    const double offset = cyc ? std::floor(cur / h) * h : 0.0;
    const double local = cur - offset;
    auto it = std::upper_bound(bp.begin(), bp.end(), local);
    double next;
    if (it != bp.end()) {
      next = offset + *it;
    } else if (cyc) {
      next = offset + h;
    } else {
      break;
    }
    if (!(next > cur)) next = std::nextafter(cur, std::numeric_limits<double>::infinity());
    cur = next;
  }
  return best;
}

}  // namespace

double SpeedTrace::min_inverse_speed(double t_m, double t_n) const {
  return scan_inverse_speed(*this, t_m, t_n, [](double a, double b) { return std::min(a, b); });
}

double SpeedTrace::max_inverse_speed(double t_m, double t_n) const {
  return scan_inverse_speed(*this, t_m, t_n, [](double a, double b) { return std::max(a, b); });
}

double equivalent_inverse_speed(const SpeedTrace& trace, double t_m, double t_n) {
  if (!(t_n > t_m)) {
    throw DegenerateInterval("degenerate interval [" + std::to_string(t_m) + ", " +
                             std::to_string(t_n) + "]");
  }
  if (t_m < 0.0) throw std::invalid_argument("negative time");
  return (t_n - t_m) / (trace.work(t_n) - trace.work(t_m));
}

}  // namespace dltbandit
