#pragma once

#include <functional>

namespace dltbandit {

struct RootResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Root of a nondecreasing function on a bracket [lo, hi] with
// f(lo) <= 0 <= f(hi). Uses false position with the Illinois modification;
// every step keeps the root bracketed, so it never does worse than
// bisection by more than a constant factor. Stops when f(x) == 0, when the
// bracket is narrower than x_tol * |x|, or when |f(x)| <= f_tol.
RootResult find_monotone_root(const std::function<double(double)>& f,
                              double lo, double hi, double f_lo, double f_hi,
                              double x_tol, double f_tol, int max_iterations);

}  // namespace dltbandit
