#include "dynamix/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynamix/qp.hpp"
#include "json_util.hpp"
#include "random.hpp"

namespace dynamix {

using detail::format_double;

std::string_view to_string(Feasibility verdict) {
  switch (verdict) {
    case Feasibility::kFeasible:
      return "Feasible";
    case Feasibility::kDeadlineInfeasible:
      return "DeadlineInfeasible";
    case Feasibility::kMemoryInfeasible:
      return "MemoryInfeasible";
  }
  return "unknown";
}

FeasibilityError::FeasibilityError(Feasibility verdict)
    : Error(ErrorKind::kFeasibility, "allocation problem is " + std::string(to_string(verdict))), verdict_(verdict) {}

ConvergenceError::ConvergenceError(const std::string& message, AllocationSolution best_iterate)
    : Error(ErrorKind::kConvergence, message), best_(std::move(best_iterate)) {}

double AllocationProblem::cap_mib(std::size_t i) const noexcept {
  const AppAllocation& app = apps[i];
  return std::min(app.upper_mib, memory_capacity_mib - app.mu_mib);
}

void AllocationProblem::validate() const {
  if (apps.empty()) throw Error(ErrorKind::kEmptyInput, "allocation problem has no apps");
  if (!(std::isfinite(deadline_ms) && std::isfinite(epsilon_ms) && epsilon_ms >= 0.0 && deadline_ms > epsilon_ms)) {
    throw Error(ErrorKind::kValidation, "need deadline_ms > epsilon_ms >= 0");
  }
  if (!(std::isfinite(memory_capacity_mib) && memory_capacity_mib > 0.0)) {
    throw Error(ErrorKind::kValidation, "memory_capacity_mib must be positive");
  }
  for (const AppAllocation& app : apps) {
    const std::string who = "app '" + app.name + "': ";
    if (app.accuracy_profile.kind != ProfileKind::kAccuracyPct || app.latency_profile.kind != ProfileKind::kLatencyMs) {
      throw Error(ErrorKind::kValidation, who + "profile kinds are swapped");
    }
    app.accuracy_profile.validate();
    app.latency_profile.validate();
    if (!(std::isfinite(app.lambda) && app.lambda > 0.0)) throw Error(ErrorKind::kValidation, who + "lambda must be positive");
    if (!(std::isfinite(app.mu_mib) && app.mu_mib >= 0.0)) throw Error(ErrorKind::kValidation, who + "mu_mib must be >= 0");
    if (!(app.lower_mib <= app.upper_mib)) throw Error(ErrorKind::kValidation, who + "lower_mib > upper_mib");
    for (const CubicProfile* p : {&app.accuracy_profile, &app.latency_profile}) {
      if (app.lower_mib < p->domain_min_mib || app.upper_mib > p->domain_max_mib) {
        throw Error(ErrorKind::kValidation, who + "[" + format_double(app.lower_mib) + ", " +
                                                format_double(app.upper_mib) + "] is outside the " +
                                                std::string(to_string(p->kind)) + " profile domain");
      }
    }
  }
}

Feasibility check_feasibility(const AllocationProblem& problem) {
  for (std::size_t i = 0; i < problem.apps.size(); ++i) {
    if (problem.apps[i].lower_mib > problem.cap_mib(i)) return Feasibility::kMemoryInfeasible;
  }
  double fastest = 0.0;
  for (std::size_t i = 0; i < problem.apps.size(); ++i) {
    fastest += cubic_extrema(problem.apps[i].latency_profile.coeffs, problem.apps[i].lower_mib, problem.cap_mib(i))
                   .min_value;
  }
  return fastest <= problem.latency_budget_ms() ? Feasibility::kFeasible : Feasibility::kDeadlineInfeasible;
}

double total_accuracy(std::span<const double> grants, const AllocationProblem& problem) {
  if (grants.size() != problem.apps.size()) {
    throw Error(ErrorKind::kDimension, "expected " + std::to_string(problem.apps.size()) + " grants, got " +
                                           std::to_string(grants.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < grants.size(); ++i) {
    total += problem.apps[i].lambda * eval_profile(problem.apps[i].accuracy_profile, grants[i]);
  }
  return total;
}

double total_accuracy(const AllocationSolution& solution, const AllocationProblem& problem) {
  return total_accuracy(solution.grants_mib, problem);
}

AllocationSolution describe_grants(const AllocationProblem& problem, std::vector<double> grants) {
  AllocationSolution s;
  s.total_accuracy = total_accuracy(grants, problem);
  double latency = 0.0;
  for (std::size_t i = 0; i < grants.size(); ++i) {
    s.predicted_accuracy_pct.push_back(eval_profile(problem.apps[i].accuracy_profile, grants[i]));
    s.predicted_latency_ms.push_back(eval_profile(problem.apps[i].latency_profile, grants[i]));
    latency += s.predicted_latency_ms.back();
  }
  s.latency_slack_ms = problem.latency_budget_ms() - latency;
  s.grants_mib = std::move(grants);
  return s;
}

double constraint_violation(const AllocationProblem& problem, std::span<const double> grants) {
  if (grants.size() != problem.apps.size()) throw Error(ErrorKind::kDimension, "grant count mismatch");
  double worst = 0.0;
  double latency = 0.0;
  for (std::size_t i = 0; i < grants.size(); ++i) {
    const AppAllocation& app = problem.apps[i];
    worst = std::max(worst, app.lower_mib - grants[i]);
    worst = std::max(worst, grants[i] - app.upper_mib);
    worst = std::max(worst, grants[i] - (problem.memory_capacity_mib - app.mu_mib));
    latency += app.latency_profile.coeffs(grants[i]);
  }
  return std::max(worst, latency - problem.latency_budget_ms());
}

namespace {

/// Problem restated over y in [0,1]^n with m = lower + y * (cap - lower), and
/// objective and constraint divided by fixed scales so both are O(1).
class ScaledProblem {
 public:
  explicit ScaledProblem(const AllocationProblem& p) : problem_(p), n_(p.apps.size()) {
    double acc_scale = 0.0;
    double lat_scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const AppAllocation& app = p.apps[i];
      lower_.push_back(app.lower_mib);
      cap_.push_back(p.cap_mib(i));
      width_.push_back(cap_.back() - lower_.back());
      const auto acc = cubic_extrema(app.accuracy_profile.coeffs, lower_[i], cap_[i]);
      const auto lat = cubic_extrema(app.latency_profile.coeffs, lower_[i], cap_[i]);
      acc_scale += app.lambda * std::max(std::abs(acc.min_value), std::abs(acc.max_value));
      lat_scale += std::max(std::abs(lat.min_value), std::abs(lat.max_value));
    }
    f_scale_ = std::max(1.0, acc_scale);
    g_scale_ = std::max({1.0, std::abs(p.latency_budget_ms()), lat_scale});
  }

  std::size_t n() const { return n_; }
  double upper_y(std::size_t i) const { return width_[i] > 0.0 ? 1.0 : 0.0; }

  double grant(std::size_t i, double y) const { return std::clamp(lower_[i] + y * width_[i], lower_[i], cap_[i]); }
  std::vector<double> grants(const std::vector<double>& y) const {
    std::vector<double> m(n_);
    for (std::size_t i = 0; i < n_; ++i) m[i] = grant(i, y[i]);
    return m;
  }
  double to_y(std::size_t i, double m) const {
    return width_[i] > 0.0 ? std::clamp((m - lower_[i]) / width_[i], 0.0, 1.0) : 0.0;
  }

  struct Eval {
    double f = 0.0;
    double g = 0.0;
    double slack_ms = 0.0;
    std::vector<double> df, dg, hf, hg;
  };

  Eval evaluate(const std::vector<double>& y, bool derivatives) const {
    Eval e;
    double latency = 0.0;
    if (derivatives) e.df = e.dg = e.hf = e.hg = std::vector<double>(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const AppAllocation& app = problem_.apps[i];
      const double m = grant(i, y[i]);
      const auto& a = app.accuracy_profile.coeffs;
      const auto& l = app.latency_profile.coeffs;
      e.f -= app.lambda * a(m);
      latency += l(m);
      if (derivatives) {
        const double w = width_[i];
        e.df[i] = -app.lambda * a.derivative(m) * w / f_scale_;
        e.hf[i] = -app.lambda * a.second_derivative(m) * w * w / f_scale_;
        e.dg[i] = -l.derivative(m) * w / g_scale_;
        e.hg[i] = -l.second_derivative(m) * w * w / g_scale_;
      }
    }
    e.f /= f_scale_;
    e.slack_ms = problem_.latency_budget_ms() - latency;
    e.g = e.slack_ms / g_scale_;
    return e;
  }

  double kkt_residual(const std::vector<double>& y, const Eval& e, double nu) const {
    double stationarity = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double grad = e.df[i] - nu * e.dg[i];
      stationarity = std::max(stationarity, std::abs(y[i] - std::clamp(y[i] - grad, 0.0, upper_y(i))));
    }
    return std::max({stationarity, std::max(0.0, -e.slack_ms), std::abs(nu * e.g)});
  }

 private:
  const AllocationProblem& problem_;
  std::size_t n_;
  std::vector<double> lower_, cap_, width_;
  double f_scale_ = 1.0;
  double g_scale_ = 1.0;
};

struct StartResult {
  std::vector<double> y;
  double residual = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

StartResult run_sqp(const ScaledProblem& sp, std::vector<double> y, const SolverOptions& opt) {
  const std::size_t n = sp.n();
  StartResult out;
  double nu = 0.0;
  double rho = 0.0;
  auto merit = [&](const ScaledProblem::Eval& e) { return e.f + rho * std::max(0.0, -e.g); };

  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    const auto e = sp.evaluate(y, true);

    QuadraticProgram qp;
    qp.n = n;
    qp.hessian.assign(n * n, 0.0);
    qp.gradient = e.df;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = e.hf[i] - nu * e.hg[i];
      qp.hessian[i * n + i] = std::max(std::abs(h), 1e-8);
      std::vector<double> unit(n, 0.0);
      unit[i] = 1.0;
      qp.constraints.push_back({unit, -y[i]});
      unit[i] = -1.0;
      qp.constraints.push_back({unit, y[i] - sp.upper_y(i)});
    }
    // Linearized latency constraint; relaxed to the best reachable value when
    // the box cannot satisfy it.
    std::vector<double> start(n, 0.0);
    double reachable = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      start[i] = e.dg[i] > 0.0 ? sp.upper_y(i) - y[i] : (e.dg[i] < 0.0 ? -y[i] : 0.0);
      reachable += e.dg[i] * start[i];
    }
    const double rhs = std::min(-e.g, reachable);
    qp.constraints.push_back({e.dg, rhs});
    if (e.g >= 0.0) start.assign(n, 0.0);

    const QpResult step = solve_qp(qp, start);
    const double qp_nu = step.multipliers.back();
    nu = qp_nu;

    out.residual = sp.kkt_residual(y, e, nu);
    if (out.residual <= opt.kkt_tolerance) {
      out.converged = true;
      break;
    }

    const std::vector<double>& d = step.x;
    rho = std::max(rho, 2.0 * nu + 1e-6);
    double linear_gain = 0.0;
    double predicted_g = e.g;
    for (std::size_t i = 0; i < n; ++i) {
      linear_gain += e.df[i] * d[i];
      predicted_g += e.dg[i] * d[i];
    }
    const double slope = linear_gain - rho * (std::max(0.0, -e.g) - std::max(0.0, -predicted_g));
    const double phi = merit(e);

    auto trial = [&](double alpha, const std::vector<double>* correction) {
      std::vector<double> t(n);
      for (std::size_t i = 0; i < n; ++i) {
        t[i] = std::clamp(y[i] + alpha * d[i] + (correction ? (*correction)[i] : 0.0), 0.0, sp.upper_y(i));
      }
      return t;
    };

    bool moved = false;
    for (double alpha = 1.0; alpha >= 1e-12; alpha *= 0.5) {
      auto t = trial(alpha, nullptr);
      const auto et = sp.evaluate(t, false);
      if (merit(et) <= phi + 1e-4 * alpha * std::min(slope, 0.0)) {
        y = std::move(t);
        moved = true;
        break;
      }
      if (alpha == 1.0 && et.g < 0.0) {
        // Second-order correction back onto the linearized constraint.
        double norm2 = 0.0;
        for (double v : e.dg) norm2 += v * v;
        if (norm2 > 0.0) {
          std::vector<double> c(n);
          for (std::size_t i = 0; i < n; ++i) c[i] = -et.g * e.dg[i] / norm2;
          auto ts = trial(1.0, &c);
          if (merit(sp.evaluate(ts, false)) <= phi + 1e-4 * std::min(slope, 0.0)) {
            y = std::move(ts);
            moved = true;
            break;
          }
        }
      }
    }
    if (!moved) break;
  }
  out.y = std::move(y);
  return out;
}

std::vector<std::vector<double>> start_points(const AllocationProblem& problem, const ScaledProblem& sp,
                                              const SolverOptions& opt) {
  const std::size_t n = sp.n();
  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 0.5);
  if (n <= opt.max_exhaustive_corners_apps) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = (mask >> i) & 1 ? 1.0 : 0.0;
      starts.push_back(std::move(y));
    }
  } else {
    detail::Rng rng(opt.seed);
    for (std::size_t k = 0; k < opt.random_corner_count; ++k) {
      std::vector<double> y(n);
      for (double& v : y) v = rng.below(2) ? 1.0 : 0.0;
      starts.push_back(std::move(y));
    }
  }

  double widest = 0.0;
  for (std::size_t i = 0; i < n; ++i) widest = std::max(widest, problem.cap_mib(i) - problem.apps[i].lower_mib);
  const auto per_axis = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(opt.coarse_grid_budget), 1.0 / static_cast<double>(n)) + 1e-9));
  if (widest > 0.0 && per_axis >= 2) {
    AllocationProblem coarse = problem;
    for (std::size_t i = 0; i < n; ++i) coarse.apps[i].upper_mib = problem.cap_mib(i);
    try {
      const auto warm = grid_oracle(coarse, widest / static_cast<double>(per_axis - 1));
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = sp.to_y(i, warm.grants_mib[i]);
      starts.push_back(std::move(y));
    } catch (const Error&) {
      // No feasible grid point at this resolution; the other starts remain.
    }
  }
  return starts;
}

}  // namespace

AllocationSolution solve(const AllocationProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (const Feasibility verdict = check_feasibility(problem); verdict != Feasibility::kFeasible) {
    throw FeasibilityError(verdict);
  }
  const ScaledProblem sp(problem);

  std::optional<AllocationSolution> best;
  std::optional<AllocationSolution> fallback;
  double fallback_violation = std::numeric_limits<double>::infinity();
  for (const auto& y0 : start_points(problem, sp, options)) {
    const StartResult r = run_sqp(sp, y0, options);
    AllocationSolution s = describe_grants(problem, sp.grants(r.y));
    s.kkt_residual = r.residual;
    s.iterations = r.iterations;
    const double violation = constraint_violation(problem, s.grants_mib);
    if (r.converged && violation <= options.constraint_tolerance) {
      if (!best || s.total_accuracy > best->total_accuracy) best = std::move(s);
    } else if (violation < fallback_violation ||
               (violation == fallback_violation && s.total_accuracy > fallback->total_accuracy)) {
      fallback_violation = violation;
      fallback = std::move(s);
    }
  }
  if (!best) {
    throw ConvergenceError("no start reached KKT residual " + format_double(options.kkt_tolerance) + " within " +
                               std::to_string(options.max_iterations) + " iterations",
                           fallback.value_or(AllocationSolution{}));
  }
  return *best;
}

AllocationSolution grid_oracle(const AllocationProblem& problem, double step_mib) {
  problem.validate();
  if (!(std::isfinite(step_mib) && step_mib > 0.0)) throw Error(ErrorKind::kParameter, "grid step must be positive");
  double points = 1.0;
  for (const AppAllocation& app : problem.apps) points *= (app.upper_mib - app.lower_mib) / step_mib + 1.0;
  if (points > kMaxGridPoints) {
    throw Error(ErrorKind::kCapacity, "grid of " + format_double(points) + " points exceeds " +
                                          format_double(kMaxGridPoints));
  }
  if (const Feasibility verdict = check_feasibility(problem); verdict != Feasibility::kFeasible) {
    throw FeasibilityError(verdict);
  }

  const std::size_t n = problem.apps.size();
  std::vector<std::vector<double>> grant(n), weighted_acc(n), latency(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AppAllocation& app = problem.apps[i];
    const double cap = problem.cap_mib(i);
    for (std::size_t k = 0;; ++k) {
      const double m = app.lower_mib + static_cast<double>(k) * step_mib;
      if (m > cap) break;
      grant[i].push_back(m);
      weighted_acc[i].push_back(app.lambda * app.accuracy_profile.coeffs(m));
      latency[i].push_back(app.latency_profile.coeffs(m));
    }
  }
  // Cheapest possible latency of apps i..n-1, for pruning.
  std::vector<double> min_rest(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    min_rest[i] = min_rest[i + 1] + *std::min_element(latency[i].begin(), latency[i].end());
  }

  const double budget = problem.latency_budget_ms();
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> acc_prefix(n + 1, 0.0), lat_prefix(n + 1, 0.0);
  std::optional<std::vector<std::size_t>> best;
  double best_acc = -std::numeric_limits<double>::infinity();
  double best_slack = -std::numeric_limits<double>::infinity();

  // Depth-first walk in lexicographic grant order, so the first of several
  // exact ties is the lexicographically smallest.
  std::size_t depth = 0;
  idx[0] = 0;
  while (true) {
    if (idx[depth] == grant[depth].size()) {
      if (depth == 0) break;
      --depth;
      ++idx[depth];
      continue;
    }
    acc_prefix[depth + 1] = acc_prefix[depth] + weighted_acc[depth][idx[depth]];
    lat_prefix[depth + 1] = lat_prefix[depth] + latency[depth][idx[depth]];
    if (lat_prefix[depth + 1] + min_rest[depth + 1] > budget) {
      ++idx[depth];
      continue;
    }
    if (depth + 1 == n) {
      const double acc = acc_prefix[n];
      const double slack = budget - lat_prefix[n];
      if (acc > best_acc || (acc == best_acc && slack > best_slack)) {
        best_acc = acc;
        best_slack = slack;
        best = idx;
      }
      ++idx[depth];
    } else {
      ++depth;
      idx[depth] = 0;
    }
  }
  if (!best) throw FeasibilityError(Feasibility::kDeadlineInfeasible);
  std::vector<double> grants(n);
  for (std::size_t i = 0; i < n; ++i) grants[i] = grant[i][(*best)[i]];
  return describe_grants(problem, std::move(grants));
}

namespace {

detail::json app_to_json(const AppAllocation& app) {
  return {{"name", app.name},
          {"lambda", app.lambda},
          {"mu_mib", app.mu_mib},
          {"lower_mib", app.lower_mib},
          {"upper_mib", app.upper_mib},
          {"accuracy_profile", detail::json::parse(profile_to_json(app.accuracy_profile))},
          {"latency_profile", detail::json::parse(profile_to_json(app.latency_profile))}};
}

AppAllocation app_from_json(const detail::json& j, std::size_t index) {
  const std::string ctx = "apps[" + std::to_string(index) + "]";
  detail::require_only_keys(j, {"name", "lambda", "mu_mib", "lower_mib", "upper_mib", "accuracy_profile",
                                "latency_profile"},
                            ctx);
  AppAllocation app;
  app.name = detail::get_string(j, "name", ctx);
  app.lambda = detail::get_number_or(j, "lambda", 1.0, ctx);
  app.mu_mib = detail::get_number_or(j, "mu_mib", 0.0, ctx);
  app.accuracy_profile = profile_from_json(detail::require_field(j, "accuracy_profile", ctx).dump());
  app.latency_profile = profile_from_json(detail::require_field(j, "latency_profile", ctx).dump());
  app.lower_mib = detail::get_number_or(
      j, "lower_mib", std::max(app.accuracy_profile.domain_min_mib, app.latency_profile.domain_min_mib), ctx);
  app.upper_mib = detail::get_number_or(
      j, "upper_mib", std::min(app.accuracy_profile.domain_max_mib, app.latency_profile.domain_max_mib), ctx);
  return app;
}

}  // namespace

std::string problem_to_json(const AllocationProblem& problem) {
  detail::json apps = detail::json::array();
  for (const AppAllocation& app : problem.apps) apps.push_back(app_to_json(app));
  detail::json doc = {{"deadline_ms", problem.deadline_ms},
                      {"epsilon_ms", problem.epsilon_ms},
                      {"memory_capacity_mib", problem.memory_capacity_mib},
                      {"apps", std::move(apps)}};
  return doc.dump(2) + "\n";
}

AllocationProblem problem_from_json(std::string_view text) {
  const auto doc = detail::parse_document(text, "allocation problem");
  constexpr std::string_view ctx = "allocation problem";
  detail::require_only_keys(doc, {"deadline_ms", "epsilon_ms", "memory_capacity_mib", "apps"}, ctx);
  AllocationProblem p;
  p.deadline_ms = detail::get_number(doc, "deadline_ms", ctx);
  p.epsilon_ms = detail::get_number(doc, "epsilon_ms", ctx);
  p.memory_capacity_mib = detail::get_number(doc, "memory_capacity_mib", ctx);
  const auto& apps = detail::require_field(doc, "apps", ctx);
  if (!apps.is_array()) throw Error(ErrorKind::kParse, "allocation problem: 'apps' must be an array");
  for (std::size_t i = 0; i < apps.size(); ++i) p.apps.push_back(app_from_json(apps[i], i));
  p.validate();
  return p;
}

std::string solution_to_json(const AllocationSolution& solution, const AllocationProblem& problem) {
  if (solution.grants_mib.size() != problem.apps.size()) throw Error(ErrorKind::kDimension, "grant count mismatch");
  detail::json apps = detail::json::array();
  for (std::size_t i = 0; i < solution.grants_mib.size(); ++i) {
    apps.push_back({{"name", problem.apps[i].name},
                    {"grant_mib", solution.grants_mib[i]},
                    {"predicted_latency_ms", solution.predicted_latency_ms[i]},
                    {"predicted_accuracy_pct", solution.predicted_accuracy_pct[i]}});
  }
  detail::json doc = {{"total_accuracy", solution.total_accuracy},
                      {"latency_slack_ms", solution.latency_slack_ms},
                      {"kkt_residual", solution.kkt_residual},
                      {"iterations", solution.iterations},
                      {"apps", std::move(apps)}};
  return doc.dump(2) + "\n";
}

AllocationSolution solution_from_json(std::string_view text) {
  const auto doc = detail::parse_document(text, "allocation solution");
  constexpr std::string_view ctx = "allocation solution";
  detail::require_only_keys(doc, {"total_accuracy", "latency_slack_ms", "kkt_residual", "iterations", "apps"}, ctx);
  AllocationSolution s;
  s.total_accuracy = detail::get_number(doc, "total_accuracy", ctx);
  s.latency_slack_ms = detail::get_number(doc, "latency_slack_ms", ctx);
  s.kkt_residual = detail::get_number(doc, "kkt_residual", ctx);
  s.iterations = detail::get_unsigned(doc, "iterations", ctx);
  const auto& apps = detail::require_field(doc, "apps", ctx);
  if (!apps.is_array()) throw Error(ErrorKind::kParse, "allocation solution: 'apps' must be an array");
  for (std::size_t i = 0; i < apps.size(); ++i) {
    const std::string actx = "apps[" + std::to_string(i) + "]";
    detail::require_only_keys(apps[i], {"name", "grant_mib", "predicted_latency_ms", "predicted_accuracy_pct"}, actx);
    s.grants_mib.push_back(detail::get_number(apps[i], "grant_mib", actx));
    s.predicted_latency_ms.push_back(detail::get_number(apps[i], "predicted_latency_ms", actx));
    s.predicted_accuracy_pct.push_back(detail::get_number(apps[i], "predicted_accuracy_pct", actx));
  }
  return s;
}

}  // namespace dynamix
