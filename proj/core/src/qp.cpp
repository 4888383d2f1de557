#include "dynamix/qp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dynamix/error.hpp"

namespace dynamix {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

bool independent_of(const MatrixXd& rows, const VectorXd& candidate) {
  if (candidate.norm() == 0.0) return false;
  if (rows.rows() == 0) return true;
  MatrixXd stacked(rows.rows() + 1, rows.cols());
  stacked << rows, candidate.transpose();
  Eigen::ColPivHouseholderQR<MatrixXd> qr(stacked.transpose());
  qr.setThreshold(1e-10);
  return qr.rank() == stacked.rows();
}

}  // namespace

QpResult solve_qp(const QuadraticProgram& qp, std::vector<double> start, double tolerance) {
  const auto n = static_cast<Index>(qp.n);
  if (qp.hessian.size() != qp.n * qp.n || qp.gradient.size() != qp.n || start.size() != qp.n) {
    throw Error(ErrorKind::kDimension, "quadratic program dimensions are inconsistent");
  }
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> G(
      qp.hessian.data(), n, n);
  const Eigen::Map<const VectorXd> c(qp.gradient.data(), n);
  const auto m = static_cast<Index>(qp.constraints.size());
  MatrixXd A(m, n);
  VectorXd b(m);
  for (Index i = 0; i < m; ++i) {
    const auto& row = qp.constraints[static_cast<std::size_t>(i)];
    if (row.a.size() != qp.n) throw Error(ErrorKind::kDimension, "constraint row has the wrong length");
    A.row(i) = Eigen::Map<const VectorXd>(row.a.data(), n).transpose();
    b(i) = row.b;
  }

  VectorXd x = Eigen::Map<const VectorXd>(start.data(), n);
  const double scale = 1.0 + A.cwiseAbs().maxCoeff() + x.cwiseAbs().maxCoeff();
  for (Index i = 0; i < m; ++i) {
    if (A.row(i).dot(x) < b(i) - 1e-9 * scale) {
      throw Error(ErrorKind::kDomain, "active-set QP start violates constraint " + std::to_string(i));
    }
  }

  std::vector<Index> working;
  auto working_rows = [&]() {
    MatrixXd rows(static_cast<Index>(working.size()), n);
    for (std::size_t k = 0; k < working.size(); ++k) rows.row(static_cast<Index>(k)) = A.row(working[k]);
    return rows;
  };
  for (Index i = 0; i < m; ++i) {
    if (std::abs(A.row(i).dot(x) - b(i)) <= 1e-12 * scale && independent_of(working_rows(), A.row(i).transpose())) {
      working.push_back(i);
    }
  }

  QpResult result;
  result.multipliers.assign(qp.constraints.size(), 0.0);
  const std::size_t max_iterations = 50 * (qp.n + qp.constraints.size() + 1);
  for (result.iterations = 0; result.iterations < max_iterations; ++result.iterations) {
    const VectorXd g = G * x + c;
    const auto w = static_cast<Index>(working.size());
    MatrixXd kkt = MatrixXd::Zero(n + w, n + w);
    VectorXd rhs = VectorXd::Zero(n + w);
    kkt.topLeftCorner(n, n) = G;
    const MatrixXd Aw = working_rows();
    kkt.topRightCorner(n, w) = -Aw.transpose();
    kkt.bottomLeftCorner(w, n) = Aw;
    rhs.head(n) = -g;
    const VectorXd sol = kkt.fullPivLu().solve(rhs);
    const VectorXd p = sol.head(n);
    const VectorXd lambda = sol.tail(w);

    if (p.lpNorm<Eigen::Infinity>() <= tolerance * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      Index most_negative = -1;
      double worst = -tolerance * (1.0 + g.lpNorm<Eigen::Infinity>());
      for (Index k = 0; k < w; ++k) {
        if (lambda(k) < worst) {
          worst = lambda(k);
          most_negative = k;
        }
      }
      if (most_negative < 0) {
        for (Index k = 0; k < w; ++k) {
          result.multipliers[static_cast<std::size_t>(working[static_cast<std::size_t>(k)])] = std::max(0.0, lambda(k));
        }
        result.converged = true;
        break;
      }
      working.erase(working.begin() + most_negative);
      continue;
    }

    double alpha = 1.0;
    Index blocking = -1;
    for (Index i = 0; i < m; ++i) {
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double ap = A.row(i).dot(p);
      if (ap < -1e-14 * scale * (1.0 + p.lpNorm<Eigen::Infinity>())) {
        const double step = std::max(0.0, (b(i) - A.row(i).dot(x)) / ap);
        if (step < alpha) {
          alpha = step;
          blocking = i;
        }
      }
    }
    x += alpha * p;
    if (blocking >= 0) working.push_back(blocking);
  }
  result.x.assign(x.data(), x.data() + n);
  return result;
}

}  // namespace dynamix
