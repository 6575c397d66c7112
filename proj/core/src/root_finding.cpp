#include "dltbandit/root_finding.hpp"

#include <cmath>

namespace dltbandit {

RootResult find_monotone_root(const std::function<double(double)>& f, double lo, double hi,
                              double f_lo, double f_hi, double x_tol, double f_tol,
                              int max_iterations) {
  RootResult r;
  if (f_lo == 0.0) return {lo, 0.0, 0, true};
  if (f_hi == 0.0) return {hi, 0.0, 0, true};
  // -1: last step moved lo, +1: moved hi. Two moves on the same side halve
  // the stale endpoint's value (Illinois).
  int side = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) {
      // Bracket collapsed to adjacent doubles.
      const bool take_lo = std::fabs(f_lo) <= std::fabs(f_hi);
      return {take_lo ? lo : hi, take_lo ? f_lo : f_hi, it, true};
    }
    const double fx = f(x);
    r = {x, fx, it, false};
    if (fx == 0.0 || std::fabs(fx) <= f_tol) {
      r.converged = true;
      return r;
    }
    if (fx < 0.0) {
      lo = x;
      f_lo = fx;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (side == +1) f_lo *= 0.5;
      side = +1;
    }
    if (hi - lo <= x_tol * std::fabs(x)) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

}  // namespace dltbandit
