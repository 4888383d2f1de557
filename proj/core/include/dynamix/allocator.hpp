#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynamix/cubic.hpp"
#include "dynamix/error.hpp"

namespace dynamix {

struct AppAllocation {
  std::string name;
  CubicProfile accuracy_profile;
  CubicProfile latency_profile;
  double lambda = 1.0;
  double mu_mib = 0.0;  ///< memory held by the other co-resident base models
  double lower_mib = 0.0;
  double upper_mib = 0.0;

  friend bool operator==(const AppAllocation&, const AppAllocation&) = default;
};

/// maximize  sum_i lambda_i A_i(m_i)
/// s.t.      sum_i L_i(m_i) <= D - epsilon
///           m_i <= M_max - mu_i,  lower_i <= m_i <= upper_i
struct AllocationProblem {
  std::vector<AppAllocation> apps;
  double deadline_ms = 0.0;
  double epsilon_ms = 0.0;
  double memory_capacity_mib = 0.0;

  double latency_budget_ms() const noexcept { return deadline_ms - epsilon_ms; }
  /// min(upper_i, M_max - mu_i)
  double cap_mib(std::size_t i) const noexcept;

  void validate() const;

  friend bool operator==(const AllocationProblem&, const AllocationProblem&) = default;
};

struct AllocationSolution {
  std::vector<double> grants_mib;
  std::vector<double> predicted_latency_ms;
  std::vector<double> predicted_accuracy_pct;
  double total_accuracy = 0.0;
  double latency_slack_ms = 0.0;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;

  friend bool operator==(const AllocationSolution&, const AllocationSolution&) = default;
};

enum class Feasibility { kFeasible, kDeadlineInfeasible, kMemoryInfeasible };

std::string_view to_string(Feasibility verdict);

class FeasibilityError : public Error {
 public:
  explicit FeasibilityError(Feasibility verdict);
  Feasibility verdict() const noexcept { return verdict_; }

 private:
  Feasibility verdict_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, AllocationSolution best_iterate);
  const AllocationSolution& best_iterate() const noexcept { return best_; }

 private:
  AllocationSolution best_;
};

/// Memory is checked before the deadline.
Feasibility check_feasibility(const AllocationProblem& problem);

struct SolverOptions {
  double kkt_tolerance = 1e-6;
  double constraint_tolerance = 1e-6;
  std::size_t max_iterations = 200;
  std::size_t max_exhaustive_corners_apps = 6;
  std::size_t random_corner_count = 64;
  /// Grid points allowed for the coarse-grid warm start.
  std::uint64_t coarse_grid_budget = 20000;
  std::uint64_t seed = 0x5eed;
};

/// SQP with an active-set QP subproblem, run from several starts; returns the
/// best converged KKT point. Throws FeasibilityError or ConvergenceError.
AllocationSolution solve(const AllocationProblem& problem, const SolverOptions& options = {});

inline constexpr double kMaxGridPoints = 1e8;

/// Exhaustive search over lower_i + k * step (k >= 0, <= cap_i). Ties go to
/// the larger latency slack, then to the lexicographically smaller grants.
AllocationSolution grid_oracle(const AllocationProblem& problem, double step_mib);

/// sum_i lambda_i A_i(grant_i)
double total_accuracy(const AllocationSolution& solution, const AllocationProblem& problem);
double total_accuracy(std::span<const double> grants, const AllocationProblem& problem);

/// Fills predictions, total accuracy and slack for the given grants.
AllocationSolution describe_grants(const AllocationProblem& problem, std::vector<double> grants);

/// Largest constraint violation of `grants` (0 when feasible), evaluated
/// directly from the problem data.
double constraint_violation(const AllocationProblem& problem, std::span<const double> grants);

std::string problem_to_json(const AllocationProblem& problem);
AllocationProblem problem_from_json(std::string_view text);
std::string solution_to_json(const AllocationSolution& solution, const AllocationProblem& problem);
AllocationSolution solution_from_json(std::string_view text);

}  // namespace dynamix
