#pragma once

// Test-side reference implementations. None of these call into the code
// they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "dynamix/allocator.hpp"
#include "dynamix/cubic.hpp"
#include "dynamix/family.hpp"
#include "dynamix/workload.hpp"

namespace dynamix::testing {

/// sum p ln(p/q) in long double with the 1e-12 floor.
inline double kl_direct(const std::vector<double>& p, const std::vector<double>& q) {
  long double total = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long double a = std::max(p[i], 1e-12), b = std::max(q[i], 1e-12);
    total += a * std::log(a / b);
  }
  return static_cast<double>(total);
}

/// Smallest sum of INT-layer sensitivities over every config with exactly
/// `fp_count` FP layers, by enumerating all 2^L masks.
inline std::vector<double> brute_force_min_sensitivity(const AppSpec& app) {
  const std::size_t n = app.layers.size();
  std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double s = 0.0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) {
        ++fp;
      } else {
        s += app.layers[i].sensitivity;
      }
    }
    best[fp] = std::min(best[fp], s);
  }
  return best;
}

/// Peak memory straight from the byte counts.
inline double peak_memory_direct(const AppSpec& app, const BitConfig& config) {
  std::uint64_t extra = 0;
  for (std::size_t i = 0; i < app.layers.size(); ++i) {
    if (config[i] == PrecisionLevel::kFP32) extra += app.layers[i].fp_bytes - app.layers[i].int_bytes;
  }
  return app.base_memory_mib + static_cast<double>(extra) / 1048576.0;
}

/// Least squares cubic by normal equations in long double on centred x.
/// Only suitable for well-conditioned data; returns x-unit coefficients.
inline CubicCoefficients normal_equation_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  long double mean = 0.0L;
  for (double x : xs) mean += x;
  mean /= static_cast<long double>(xs.size());
  long double a[4][5] = {};
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const long double t = xs[k] - mean;
    const long double pw[4] = {1.0L, t, t * t, t * t * t};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) a[r][c] += pw[r] * pw[c];
      a[r][4] += pw[r] * ys[k];
    }
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[piv][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  long double b[4];
  for (int i = 0; i < 4; ++i) b[i] = a[i][4] / a[i][i];
  // Expand b0 + b1 (x-m) + b2 (x-m)^2 + b3 (x-m)^3.
  const long double m = mean;
  CubicCoefficients c;
  c.c3 = static_cast<double>(b[3]);
  c.c2 = static_cast<double>(b[2] - 3 * b[3] * m);
  c.c1 = static_cast<double>(b[1] - 2 * b[2] * m + 3 * b[3] * m * m);
  c.c0 = static_cast<double>(b[0] - b[1] * m + b[2] * m * m - b[3] * m * m * m);
  return c;
}

inline double bisection_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// max of a function over [lo, hi] by dense sampling.
inline double scan_max(const std::function<double(double)>& f, double lo, double hi, int samples = 200000) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= samples; ++k) best = std::max(best, f(lo + (hi - lo) * k / samples));
  return best;
}

/// Separable QP  min sum 0.5 h_i x_i^2 + g_i x_i  s.t.  lo <= x <= hi,
/// a . x >= b, solved by bisection on the multiplier of the coupling row.
inline std::vector<double> breakpoint_qp(const std::vector<double>& h, const std::vector<double>& g,
                                         const std::vector<double>& lo, const std::vector<double>& hi,
                                         const std::vector<double>& a, double b) {
  const std::size_t n = h.size();
  auto x_of = [&](double nu) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp((nu * a[i] - g[i]) / h[i], lo[i], hi[i]);
    return x;
  };
  auto lhs = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * x[i];
    return s;
  };
  if (lhs(x_of(0.0)) >= b) return x_of(0.0);
  double nu_lo = 0.0, nu_hi = 1.0;
  while (lhs(x_of(nu_hi)) < b) nu_hi *= 2.0;
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (nu_lo + nu_hi);
    (lhs(x_of(mid)) < b ? nu_lo : nu_hi) = mid;
  }
  return x_of(nu_hi);
}

/// Cubic in x whose shape on [lo, lo + width] is b0 + b1 t + b2 t^2 + b3 t^3,
/// t = (x - lo) / width.
inline CubicCoefficients from_unit_cubic(double b0, double b1, double b2, double b3, double lo, double width) {
  const double al = 1.0 / width, be = -lo / width;
  CubicCoefficients c;
  c.c3 = b3 * al * al * al;
  c.c2 = b2 * al * al + 3 * b3 * al * al * be;
  c.c1 = b1 * al + 2 * b2 * al * be + 3 * b3 * al * be * be;
  c.c0 = b0 + b1 * be + b2 * be * be + b3 * be * be * be;
  return c;
}

/// Random 1-3 app problem on small integer-aligned boxes; the latency budget
/// usually binds.
inline AllocationProblem random_problem(std::mt19937_64& rng, std::size_t apps) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  AllocationProblem p;
  p.epsilon_ms = 5.0;
  p.memory_capacity_mib = 10000.0;
  double min_sum = 0.0, max_sum = 0.0;
  for (std::size_t i = 0; i < apps; ++i) {
    AppAllocation a;
    a.name = "app" + std::to_string(i);
    const double lo = std::floor(10.0 + 90.0 * u(rng));
    const double width = std::floor(20.0 + 80.0 * u(rng));
    a.lower_mib = lo;
    a.upper_mib = lo + width;
    a.accuracy_profile.kind = ProfileKind::kAccuracyPct;
    a.accuracy_profile.domain_min_mib = lo;
    a.accuracy_profile.domain_max_mib = lo + width;
    a.accuracy_profile.coeffs =
        from_unit_cubic(40 + 40 * u(rng), 30 * u(rng), -15 + 20 * u(rng), -8 + 12 * u(rng), lo, width);
    a.latency_profile = a.accuracy_profile;
    a.latency_profile.kind = ProfileKind::kLatencyMs;
    for (;;) {
      a.latency_profile.coeffs =
          from_unit_cubic(5 + 40 * u(rng), 20 + 100 * u(rng), -30 + 60 * u(rng), -20 + 40 * u(rng), lo, width);
      const auto ext = cubic_extrema(a.latency_profile.coeffs, lo, lo + width);
      if (ext.min_value > 0.0) {
        min_sum += ext.min_value;
        max_sum += ext.max_value;
        break;
      }
    }
    a.lambda = u(rng) < 0.3 ? 0.5 + 2.0 * u(rng) : 1.0;
    p.apps.push_back(std::move(a));
  }
  p.deadline_ms = p.epsilon_ms + min_sum + (max_sum - min_sum) * (0.05 + 1.0 * u(rng));
  if (u(rng) < 0.3) {
    // Tighten memory for one app.
    AppAllocation& a = p.apps[0];
    const double cap = std::floor(a.lower_mib + (a.upper_mib - a.lower_mib) * (0.2 + 0.6 * u(rng)));
    a.mu_mib = p.memory_capacity_mib - cap;
  }
  return p;
}

}  // namespace dynamix::testing
