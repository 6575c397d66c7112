#pragma once
// Independent reference computations used only by the tests. None of these
// call into the solver or integration code they are used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dltbandit/schedule.hpp"
#include "dltbandit/speed_trace.hpp"

namespace dltbandit::oracle {

// Midpoint-rule integral of 1/inverse_speed over [t_m, t_n].
inline double quadrature_equivalent(const SpeedTrace& trace, double t_m, double t_n,
                                    std::size_t steps = 200000) {
  const double h = (t_n - t_m) / static_cast<double>(steps);
  double integral = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    integral += h / trace.inverse_speed_at(t_m + (static_cast<double>(i) + 0.5) * h);
  }
  return (t_n - t_m) / integral;
}

// Dense Gaussian elimination with partial pivoting. a is row-major n x n.
inline std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) throw std::runtime_error("singular system");
    for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

struct LinearSchedule {
  std::vector<double> kappa;  // by worker
  double control_kappa = 0.0;
  double makespan = 0.0;
};

// Equal-finish-time conditions written as one linear system in
// (kappa_seq[0..N-1], [kappa_0], T):
//   sum_{q<=p} kappa_q z_q t_cm + kappa_p omega_p t_cp - T = 0   for every position p
//   kappa_0 omega_0 t_cp - T = 0                                 with a computing control
//   sum kappa = 1
inline LinearSchedule linear_schedule(const SystemConfig& cfg, const Sequence& seq) {
  const std::size_t n = cfg.n_workers();
  const std::size_t k = n + (cfg.control_computes ? 1 : 0);
  const std::size_t dim = k + 1;
  std::vector<double> a(dim * dim, 0.0), b(dim, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q <= p; ++q) a[p * dim + q] += cfg.z[seq[q]] * cfg.t_cm;
    a[p * dim + p] += cfg.omega[seq[p]] * cfg.t_cp;
    a[p * dim + k] = -1.0;
  }
  if (cfg.control_computes) {
    a[n * dim + n] = cfg.omega0 * cfg.t_cp;
    a[n * dim + k] = -1.0;
  }
  for (std::size_t c = 0; c < k; ++c) a[k * dim + c] = 1.0;
  b[k] = 1.0;
  const auto x = solve_linear(a, b);

  LinearSchedule out;
  out.kappa.assign(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) out.kappa[seq[p]] = x[p];
  if (cfg.control_computes) out.control_kappa = x[n];
  out.makespan = x[k];
  return out;
}

// Fixed-step time marching of the sequential distribution. Accuracy is
// O(dt) per phase; it only uses pointwise inverse speeds.
inline std::vector<double> stepped_finish_times(const SystemConfig& cfg,
                                                const SystemTraces& traces, const Sequence& seq,
                                                const std::vector<double>& kappa, double dt) {
  auto march = [dt](const SpeedTrace& tr, double start, double amount) {
    double t = start, done = 0.0;
    while (true) {
      const double rate = 1.0 / tr.inverse_speed_at(t);
      if (done + rate * dt >= amount) return t + (amount - done) / rate;
      done += rate * dt;
      t += dt;
    }
  };
  std::vector<double> finish(cfg.n_workers(), 0.0);
  double clock = 0.0;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const int w = seq[p];
    const double received = march(traces.workers[w].comm, clock, kappa[w] * cfg.t_cm);
    finish[w] = march(traces.workers[w].compute, received, kappa[w] * cfg.t_cp);
    clock = received;
  }
  return finish;
}

}  // namespace dltbandit::oracle
