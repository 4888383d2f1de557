#include "dynamix/qp.hpp"

#include <random>

#include <gtest/gtest.h>

#include "dynamix/error.hpp"
#include "oracles.hpp"

namespace dynamix {
namespace {

QuadraticProgram box_qp(const std::vector<double>& h, const std::vector<double>& g, const std::vector<double>& lo,
                        const std::vector<double>& hi) {
  QuadraticProgram qp;
  qp.n = h.size();
  qp.hessian.assign(qp.n * qp.n, 0.0);
  qp.gradient = g;
  for (std::size_t i = 0; i < qp.n; ++i) {
    qp.hessian[i * qp.n + i] = h[i];
    std::vector<double> e(qp.n, 0.0);
    e[i] = 1.0;
    qp.constraints.push_back({e, lo[i]});
    e[i] = -1.0;
    qp.constraints.push_back({e, -hi[i]});
  }
  return qp;
}

TEST(SolveQp, UnconstrainedMinimum) {
  auto qp = box_qp({2.0, 4.0}, {-2.0, -4.0}, {-10, -10}, {10, 10});
  const auto r = solve_qp(qp, {0.0, 0.0});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
  for (double m : r.multipliers) EXPECT_EQ(m, 0.0);
}

TEST(SolveQp, BoundActive) {
  auto qp = box_qp({1.0}, {-5.0}, {0.0}, {2.0});
  const auto r = solve_qp(qp, {0.0});
  EXPECT_NEAR(r.x[0], 2.0, 1e-12);
  EXPECT_NEAR(r.multipliers[1], 3.0, 1e-12);
}

TEST(SolveQp, InfeasibleStartRejected) {
  auto qp = box_qp({1.0}, {0.0}, {0.0}, {1.0});
  try {
    solve_qp(qp, {3.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(SolveQp, MatchesBreakpointOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<double> h(n), g(n), lo(n), hi(n), a(n);
    double top = 0.0, bottom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = 0.1 + 5.0 * u(rng);
      g[i] = -3.0 + 6.0 * u(rng);
      lo[i] = -1.0 - u(rng);
      hi[i] = 1.0 + u(rng);
      a[i] = 0.05 + u(rng);
      top += a[i] * hi[i];
      bottom += a[i] * lo[i];
    }
    const double b = bottom + (top - bottom) * u(rng);
    auto qp = box_qp(h, g, lo, hi);
    qp.constraints.push_back({a, b});
    const auto r = solve_qp(qp, hi);
    ASSERT_TRUE(r.converged);
    const auto want = testing::breakpoint_qp(h, g, lo, hi, a, b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(r.x[i], want[i], 1e-7) << "trial " << trial;
    for (double m : r.multipliers) EXPECT_GE(m, -1e-12);
  }
}

}  // namespace
}  // namespace dynamix
