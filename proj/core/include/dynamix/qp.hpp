#pragma once

#include <cstddef>
#include <vector>

namespace dynamix {

/// a . x >= b
struct LinearInequality {
  std::vector<double> a;
  double b = 0.0;
};

/// minimize 0.5 x'Gx + c'x subject to a_i . x >= b_i, with G symmetric
/// positive definite (row-major, n x n).
struct QuadraticProgram {
  std::size_t n = 0;
  std::vector<double> hessian;
  std::vector<double> gradient;
  std::vector<LinearInequality> constraints;
};

struct QpResult {
  std::vector<double> x;
  std::vector<double> multipliers;  ///< one per constraint, zero when inactive
  std::size_t iterations = 0;
  bool converged = false;
};

/// Primal active-set method. `start` must satisfy every constraint
/// (up to `tolerance`).
QpResult solve_qp(const QuadraticProgram& qp, std::vector<double> start, double tolerance = 1e-12);

}  // namespace dynamix
