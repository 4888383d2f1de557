#include "dynamix/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace dynamix {

using detail::format_double;
using detail::json;

std::vector<std::string> sjf_order(std::vector<SjfJob> jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const SjfJob& a, const SjfJob& b) {
    if (a.estimated_latency_ms != b.estimated_latency_ms) return a.estimated_latency_ms < b.estimated_latency_ms;
    return a.name < b.name;
  });
  std::vector<std::string> names;
  names.reserve(jobs.size());
  for (auto& j : jobs) names.push_back(std::move(j.name));
  return names;
}

ScenarioApp prepare_app(const AppSpec& app, std::size_t lut_entries, double lambda) {
  ScenarioApp out;
  out.profiled = profile_app(app);
  out.lut = build_lut(out.profiled.retained_models, lut_entries, app.name);
  out.lambda = lambda;
  return out;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kAppStart:
      return "app_start";
    case EventKind::kAppStop:
      return "app_stop";
    case EventKind::kDeadlineChange:
      return "deadline_change";
    case EventKind::kMemoryChange:
      return "memory_change";
  }
  return "unknown";
}

namespace {

EventKind event_kind_from_string(std::string_view text) {
  for (EventKind k : {EventKind::kAppStart, EventKind::kAppStop, EventKind::kDeadlineChange, EventKind::kMemoryChange}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorKind::kParse, "unknown event kind '" + std::string(text) + "'");
}

void check_deadline(double deadline_ms, const Scenario& s, const std::string& where) {
  if (!(std::isfinite(deadline_ms) && deadline_ms > s.epsilon_ms)) {
    throw Error(ErrorKind::kValidation, where + ": deadline must exceed epsilon_ms");
  }
  if (deadline_ms > s.frame_period_ms) {
    throw Error(ErrorKind::kValidation, where + ": deadline " + format_double(deadline_ms) +
                                            " ms exceeds the frame period " + format_double(s.frame_period_ms) + " ms");
  }
}

std::size_t index_of(const std::vector<ScenarioApp>& apps, const std::string& name) {
  for (std::size_t i = 0; i < apps.size(); ++i) {
    if (apps[i].name() == name) return i;
  }
  throw Error(ErrorKind::kValidation, "unknown app '" + name + "'");
}

}  // namespace

void Scenario::validate() const {
  if (apps.empty()) throw Error(ErrorKind::kEmptyInput, "scenario has no apps");
  std::set<std::string> names;
  for (const auto& a : apps) {
    if (!names.insert(a.name()).second) throw Error(ErrorKind::kValidation, "duplicate app '" + a.name() + "'");
  }
  if (!(std::isfinite(epsilon_ms) && epsilon_ms >= 0.0)) throw Error(ErrorKind::kValidation, "epsilon_ms must be >= 0");
  if (!(std::isfinite(frame_period_ms) && frame_period_ms > 0.0)) {
    throw Error(ErrorKind::kValidation, "frame_period_ms must be positive");
  }
  if (!(std::isfinite(duration_ms) && duration_ms > 0.0)) throw Error(ErrorKind::kValidation, "duration_ms must be positive");
  if (!(std::isfinite(memory_capacity_mib) && memory_capacity_mib > 0.0)) {
    throw Error(ErrorKind::kValidation, "memory_capacity_mib must be positive");
  }
  check_deadline(initial_deadline_ms, *this, "initial_deadline_ms");
  double previous = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const ScenarioEvent& e = events[i];
    const std::string where = "events[" + std::to_string(i) + "]";
    if (!(std::isfinite(e.at_ms) && e.at_ms >= 0.0)) throw Error(ErrorKind::kValidation, where + ": at_ms must be >= 0");
    if (e.at_ms < previous) throw Error(ErrorKind::kValidation, where + ": events must be time-ordered");
    previous = e.at_ms;
    switch (e.kind) {
      case EventKind::kAppStart:
      case EventKind::kAppStop:
        index_of(apps, e.app);
        break;
      case EventKind::kDeadlineChange:
        check_deadline(e.value, *this, where);
        break;
      case EventKind::kMemoryChange:
        if (!(std::isfinite(e.value) && e.value > 0.0)) throw Error(ErrorKind::kValidation, where + ": capacity must be positive");
        break;
    }
  }
}

AllocationProblem make_allocation_problem(const std::vector<ScenarioApp>& registered,
                                          const std::vector<std::size_t>& active, double deadline_ms,
                                          double epsilon_ms, double memory_capacity_mib) {
  AllocationProblem p;
  p.deadline_ms = deadline_ms;
  p.epsilon_ms = epsilon_ms;
  p.memory_capacity_mib = memory_capacity_mib;
  for (std::size_t i : active) {
    const ProfiledApp& prof = registered.at(i).profiled;
    AppAllocation a;
    a.name = prof.app.name;
    a.accuracy_profile = prof.accuracy_profile;
    a.latency_profile = prof.latency_profile;
    a.lambda = registered[i].lambda;
    for (std::size_t j = 0; j < registered.size(); ++j) {
      if (j != i) a.mu_mib += registered[j].profiled.app.base_memory_mib;
    }
    a.lower_mib = prof.lower_mib();
    a.upper_mib = prof.upper_mib();
    p.apps.push_back(std::move(a));
  }
  return p;
}

SimReport run_scenario(const Scenario& scenario, SimTimings* timings) {
  scenario.validate();
  const auto& apps = scenario.apps;
  const std::size_t n = apps.size();

  std::vector<bool> running(n, true);
  for (const auto& e : scenario.events) {
    if (e.kind == EventKind::kAppStart) running[index_of(apps, e.app)] = false;
  }
  double all_base = 0.0;
  for (const auto& a : apps) all_base += a.profiled.app.base_memory_mib;

  struct Cached {
    CompressedModel model;
    double grant_mib = 0.0;
  };
  std::vector<std::optional<Cached>> cached(n);

  double deadline = scenario.initial_deadline_ms;
  double capacity = scenario.memory_capacity_mib;
  std::size_t next_event = 0;
  double previous_finish = 0.0;
  SimReport report;
  report.min_memory_margin_mib = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0;; ++k) {
    const double arrival = static_cast<double>(k) * scenario.frame_period_ms;
    if (arrival >= scenario.duration_ms) break;
    bool changed = k == 0;
    while (next_event < scenario.events.size() && scenario.events[next_event].at_ms <= arrival) {
      const ScenarioEvent& e = scenario.events[next_event++];
      changed = true;
      switch (e.kind) {
        case EventKind::kAppStart:
          running[index_of(apps, e.app)] = true;
          break;
        case EventKind::kAppStop:
          running[index_of(apps, e.app)] = false;
          break;
        case EventKind::kDeadlineChange:
          deadline = e.value;
          break;
        case EventKind::kMemoryChange:
          capacity = e.value;
          break;
      }
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i) {
      if (running[i]) active.push_back(i);
    }

    FrameTrace frame;
    frame.frame_index = k;
    frame.arrival_ms = arrival;
    frame.deadline_ms = deadline;
    frame.memory_capacity_mib = capacity;
    frame.case_kind = changed ? CaseKind::kCase1 : CaseKind::kCase2;
    frame.allocation_ms = changed ? scenario.epsilon_ms : 0.0;

    if (changed && !active.empty()) {
      ++report.allocator_invocations;
      const auto problem = make_allocation_problem(apps, active, deadline, scenario.epsilon_ms, capacity);
      try {
        const auto t0 = std::chrono::steady_clock::now();
        AllocationSolution solution;
        try {
          solution = solve(problem);
        } catch (...) {
          if (timings) {
            timings->solver_wall_ms.emplace_back(
                k, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
          }
          throw;
        }
        if (timings) {
          timings->solver_wall_ms.emplace_back(
              k, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        }
        std::vector<Cached> fresh;
        for (std::size_t a = 0; a < active.size(); ++a) {
          const ScenarioApp& app = apps[active[a]];
          const LutHit hit = query_lut(app.lut, solution.grants_mib[a]);
          fresh.push_back({evaluate_config(app.profiled.app, hit.entry.config), solution.grants_mib[a]});
        }
        for (std::size_t a = 0; a < active.size(); ++a) cached[active[a]] = std::move(fresh[a]);
      } catch (const FeasibilityError& e) {
        if (k == 0) throw;
        frame.valid = false;
        frame.verdict = std::string(to_string(e.verdict()));
      } catch (const Error& e) {
        if (k == 0) throw;
        frame.valid = false;
        frame.verdict = std::string(to_string(e.kind()));
      }
    }

    std::vector<SjfJob> jobs;
    for (std::size_t i : active) {
      if (!cached[i]) {
        // Started while allocation failed: run the smallest retained model.
        const CompressedModel& smallest = apps[i].profiled.retained_models.front();
        cached[i] = Cached{smallest, smallest.peak_memory_mib};
      }
      jobs.push_back({apps[i].name(), cached[i]->model.wcet_ms});
    }

    double t = std::max(arrival, previous_finish) + frame.allocation_ms;
    frame.peak_memory_mib = active.empty() ? all_base : 0.0;
    for (const std::string& name : sjf_order(std::move(jobs))) {
      const std::size_t i = index_of(apps, name);
      const ScenarioApp& app = apps[i];
      const Cached& c = *cached[i];
      const ExecutionCost cost = execution_cost(app.profiled.app, c.model.config);
      AppExecution ex;
      ex.name = name;
      ex.config = c.model.config;
      ex.grant_mib = c.grant_mib;
      ex.reconfig_ms = cost.reconfig_ms;
      ex.exec_ms = cost.exec_ms;
      ex.restore_ms = cost.restore_ms;
      ex.start_ms = t;
      t += cost.total();
      ex.finish_ms = t;
      ex.accuracy_pct = c.model.accuracy_pct;
      ex.peak_memory_mib = c.model.peak_memory_mib;
      ex.resident_after_mib = app.profiled.app.base_memory_mib;
      frame.total_accuracy += app.lambda * ex.accuracy_pct;
      const double others = all_base - app.profiled.app.base_memory_mib;
      frame.peak_memory_mib = std::max(frame.peak_memory_mib, ex.peak_memory_mib + others);
      report.accuracy_series[name].emplace_back(k, ex.accuracy_pct);
      frame.per_app.push_back(std::move(ex));
    }
    frame.end_to_end_ms = t - arrival;
    previous_finish = t;
    frame.met_deadline = frame.end_to_end_ms <= frame.deadline_ms;
    if (!frame.met_deadline) ++report.deadline_miss_count;
    report.min_memory_margin_mib = std::min(report.min_memory_margin_mib, capacity - frame.peak_memory_mib);
    report.frames.push_back(std::move(frame));
  }
  if (report.frames.empty()) report.min_memory_margin_mib = 0.0;
  return report;
}

BaselineReport baseline_compare(const AppSpec& app, double full_fp_load_ms) {
  if (!(std::isfinite(full_fp_load_ms) && full_fp_load_ms >= 0.0)) {
    throw Error(ErrorKind::kValidation, "full_fp_load_ms must be >= 0");
  }
  const auto family = build_family(app);
  BaselineReport r;
  r.baseline_latency_ms = full_fp_load_ms;
  for (const auto& l : app.layers) r.baseline_latency_ms += l.fp_latency_ms;
  r.baseline_memory_mib = family.back().peak_memory_mib;
  std::size_t faster = 0, dominating = 0;
  for (const auto& m : family) {
    BaselineMember b;
    b.fp_layer_count = m.fp_layer_count;
    b.wcet_ms = m.wcet_ms;
    b.peak_memory_mib = m.peak_memory_mib;
    b.faster = m.wcet_ms < r.baseline_latency_ms;
    b.smaller = m.peak_memory_mib < r.baseline_memory_mib;
    b.dominates = b.faster && b.smaller;
    faster += b.faster;
    dominating += b.dominates;
    r.members.push_back(b);
  }
  r.faster_fraction = static_cast<double>(faster) / static_cast<double>(family.size());
  r.dominating_fraction = static_cast<double>(dominating) / static_cast<double>(family.size());
  r.quantized_latency_ratio = r.baseline_latency_ms / family.front().wcet_ms;
  r.quantized_memory_ratio = r.baseline_memory_mib / family.front().peak_memory_mib;
  return r;
}

std::string baseline_to_csv(const BaselineReport& report) {
  std::ostringstream out;
  out << "# baseline_latency_ms=" << format_double(report.baseline_latency_ms)
      << " baseline_memory_mib=" << format_double(report.baseline_memory_mib) << '\n';
  out << "fp_layer_count,wcet_ms,peak_memory_mib,faster,smaller,dominates\n";
  for (const auto& m : report.members) {
    out << m.fp_layer_count << ',' << format_double(m.wcet_ms) << ',' << format_double(m.peak_memory_mib) << ','
        << m.faster << ',' << m.smaller << ',' << m.dominates << '\n';
  }
  return out.str();
}

SweepApp sweep_app_from(const ProfiledApp& app, double lambda) {
  SweepApp s;
  s.allocation.name = app.app.name;
  s.allocation.accuracy_profile = app.accuracy_profile;
  s.allocation.latency_profile = app.latency_profile;
  s.allocation.lambda = lambda;
  s.allocation.lower_mib = app.lower_mib();
  s.allocation.upper_mib = app.upper_mib();
  s.base_memory_mib = app.app.base_memory_mib;
  return s;
}

std::string_view to_string(CellStatus status) {
  switch (status) {
    case CellStatus::kValid:
      return "valid";
    case CellStatus::kDeadlineInfeasible:
      return "deadline_infeasible";
    case CellStatus::kMemoryInfeasible:
      return "memory_infeasible";
    case CellStatus::kAccuracyDrop:
      return "accuracy_drop";
  }
  return "unknown";
}

std::vector<SweepCell> robustness_sweep(const std::vector<SweepApp>& apps, const std::vector<double>& deadlines_ms,
                                        const std::vector<double>& capacities_mib, const SweepOptions& options) {
  if (apps.empty() || deadlines_ms.empty() || capacities_mib.empty()) {
    throw Error(ErrorKind::kEmptyInput, "sweep needs at least one app, deadline and capacity");
  }
  if (!(options.accuracy_drop_threshold_pct >= 0.0)) throw Error(ErrorKind::kValidation, "threshold must be >= 0");
  double all_base = 0.0;
  for (const auto& a : apps) all_base += a.base_memory_mib;

  std::vector<SweepCell> cells;
  for (double d : deadlines_ms) {
    for (double m : capacities_mib) {
      SweepCell cell{d, m, CellStatus::kValid, std::numeric_limits<double>::quiet_NaN()};
      AllocationProblem p;
      p.deadline_ms = d;
      p.epsilon_ms = options.epsilon_ms;
      p.memory_capacity_mib = m;
      double reference = 0.0;
      for (const auto& a : apps) {
        AppAllocation alloc = a.allocation;
        alloc.mu_mib = all_base - a.base_memory_mib;
        reference += alloc.lambda * eval_profile(alloc.accuracy_profile, alloc.upper_mib);
        p.apps.push_back(std::move(alloc));
      }
      if (!(d > options.epsilon_ms)) {
        cell.status = CellStatus::kDeadlineInfeasible;
      } else if (const Feasibility verdict = check_feasibility(p); verdict != Feasibility::kFeasible) {
        cell.status = verdict == Feasibility::kMemoryInfeasible ? CellStatus::kMemoryInfeasible
                                                                : CellStatus::kDeadlineInfeasible;
      } else {
        try {
          const auto s = options.oracle_step_mib ? grid_oracle(p, *options.oracle_step_mib) : solve(p);
          cell.total_accuracy = s.total_accuracy;
          if (reference - s.total_accuracy > options.accuracy_drop_threshold_pct / 100.0 * std::abs(reference)) {
            cell.status = CellStatus::kAccuracyDrop;
          }
        } catch (const FeasibilityError& e) {
          cell.status = e.verdict() == Feasibility::kMemoryInfeasible ? CellStatus::kMemoryInfeasible
                                                                      : CellStatus::kDeadlineInfeasible;
        }
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells, const SweepOptions& options) {
  std::ostringstream out;
  out << "# threshold_pct=" << format_double(options.accuracy_drop_threshold_pct) << '\n';
  out << "deadline_ms,memory_mib,status,total_accuracy\n";
  for (const auto& c : cells) {
    out << format_double(c.deadline_ms) << ',' << format_double(c.memory_mib) << ',' << to_string(c.status) << ',';
    if (!std::isnan(c.total_accuracy)) out << format_double(c.total_accuracy);
    out << '\n';
  }
  return out.str();
}

namespace {

AppSpec app_from_ref(const json& ref, const std::string& base_dir, const std::string& ctx) {
  if (ref.is_string()) {
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_app_spec_file(p.string());
  }
  if (ref.is_object()) return app_spec_from_json(ref.dump());
  throw Error(ErrorKind::kParse, ctx + ": app must be a path or an inline app spec");
}

}  // namespace

Scenario scenario_from_json(std::string_view text, const std::string& base_dir) {
  const auto doc = detail::parse_document(text, "scenario");
  constexpr std::string_view ctx = "scenario";
  detail::require_only_keys(doc, {"apps", "initial_deadline_ms", "memory_capacity_mib", "epsilon_ms",
                                  "frame_period_ms", "duration_ms", "events"},
                            ctx);
  Scenario s;
  s.initial_deadline_ms = detail::get_number_or(doc, "initial_deadline_ms", s.initial_deadline_ms, ctx);
  s.memory_capacity_mib = detail::get_number_or(doc, "memory_capacity_mib", s.memory_capacity_mib, ctx);
  s.epsilon_ms = detail::get_number_or(doc, "epsilon_ms", s.epsilon_ms, ctx);
  s.frame_period_ms = detail::get_number_or(doc, "frame_period_ms", s.frame_period_ms, ctx);
  s.duration_ms = detail::get_number(doc, "duration_ms", ctx);

  const auto& apps = detail::require_field(doc, "apps", ctx);
  if (!apps.is_array()) throw Error(ErrorKind::kParse, "scenario: 'apps' must be an array");
  for (std::size_t i = 0; i < apps.size(); ++i) {
    const std::string actx = "apps[" + std::to_string(i) + "]";
    const json& entry = apps[i];
    if (entry.is_object() && entry.contains("spec")) {
      detail::require_only_keys(entry, {"spec", "lambda", "lut_entries"}, actx);
      const double lambda = detail::get_number_or(entry, "lambda", 1.0, actx);
      const std::size_t z =
          entry.contains("lut_entries") ? detail::get_unsigned(entry, "lut_entries", actx) : kDefaultLutEntries;
      s.apps.push_back(prepare_app(app_from_ref(entry["spec"], base_dir, actx), z, lambda));
    } else {
      s.apps.push_back(prepare_app(app_from_ref(entry, base_dir, actx)));
    }
  }

  if (doc.contains("events")) {
    const auto& events = doc["events"];
    if (!events.is_array()) throw Error(ErrorKind::kParse, "scenario: 'events' must be an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
      const std::string ectx = "events[" + std::to_string(i) + "]";
      detail::require_only_keys(events[i], {"at_ms", "kind", "arg"}, ectx);
      ScenarioEvent e;
      e.at_ms = detail::get_number(events[i], "at_ms", ectx);
      e.kind = event_kind_from_string(detail::get_string(events[i], "kind", ectx));
      if (e.kind == EventKind::kAppStart || e.kind == EventKind::kAppStop) {
        e.app = detail::get_string(events[i], "arg", ectx);
      } else {
        e.value = detail::get_number(events[i], "arg", ectx);
      }
      s.events.push_back(std::move(e));
    }
  }
  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  const std::string text = detail::read_file(path);
  return scenario_from_json(text, std::filesystem::path(path).parent_path().string());
}

std::string report_to_json(const SimReport& report) {
  json frames = json::array();
  for (const auto& f : report.frames) {
    json per_app = json::array();
    for (const auto& a : f.per_app) {
      per_app.push_back({{"name", a.name},
                         {"config", a.config.to_string()},
                         {"grant_mib", a.grant_mib},
                         {"reconfig_ms", a.reconfig_ms},
                         {"exec_ms", a.exec_ms},
                         {"restore_ms", a.restore_ms},
                         {"start_ms", a.start_ms},
                         {"finish_ms", a.finish_ms},
                         {"accuracy_pct", a.accuracy_pct},
                         {"peak_memory_mib", a.peak_memory_mib},
                         {"resident_after_mib", a.resident_after_mib}});
    }
    frames.push_back({{"frame_index", f.frame_index},
                      {"arrival_ms", f.arrival_ms},
                      {"case", f.case_kind == CaseKind::kCase1 ? "case1" : "case2"},
                      {"allocation_ms", f.allocation_ms},
                      {"end_to_end_ms", f.end_to_end_ms},
                      {"deadline_ms", f.deadline_ms},
                      {"met_deadline", f.met_deadline},
                      {"total_accuracy", f.total_accuracy},
                      {"peak_memory_mib", f.peak_memory_mib},
                      {"memory_capacity_mib", f.memory_capacity_mib},
                      {"valid", f.valid},
                      {"verdict", f.verdict},
                      {"per_app", std::move(per_app)}});
  }
  json series = json::object();
  for (const auto& [name, points] : report.accuracy_series) {
    json arr = json::array();
    for (const auto& [frame, acc] : points) arr.push_back(json::array({frame, acc}));
    series[name] = std::move(arr);
  }
  json doc = {{"deadline_miss_count", report.deadline_miss_count},
              {"min_memory_margin_mib", report.min_memory_margin_mib},
              {"allocator_invocations", report.allocator_invocations},
              {"accuracy_series", std::move(series)},
              {"frames", std::move(frames)}};
  return doc.dump(2) + "\n";
}

SimReport report_from_json(std::string_view text) {
  const auto doc = detail::parse_document(text, "report");
  constexpr std::string_view ctx = "report";
  detail::require_only_keys(
      doc, {"deadline_miss_count", "min_memory_margin_mib", "allocator_invocations", "accuracy_series", "frames"}, ctx);
  SimReport r;
  r.deadline_miss_count = detail::get_unsigned(doc, "deadline_miss_count", ctx);
  r.min_memory_margin_mib = detail::get_number(doc, "min_memory_margin_mib", ctx);
  r.allocator_invocations = detail::get_unsigned(doc, "allocator_invocations", ctx);
  for (const auto& [name, points] : detail::require_field(doc, "accuracy_series", ctx).items()) {
    auto& out = r.accuracy_series[name];
    for (const auto& p : points) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::kParse, "report: series points are [frame, accuracy]");
      out.emplace_back(p[0].get<std::size_t>(), p[1].get<double>());
    }
  }
  const auto& frames = detail::require_field(doc, "frames", ctx);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const json& fj = frames[i];
    const std::string fctx = "frames[" + std::to_string(i) + "]";
    FrameTrace f;
    f.frame_index = detail::get_unsigned(fj, "frame_index", fctx);
    f.arrival_ms = detail::get_number(fj, "arrival_ms", fctx);
    const std::string kind = detail::get_string(fj, "case", fctx);
    if (kind != "case1" && kind != "case2") throw Error(ErrorKind::kParse, fctx + ": unknown case '" + kind + "'");
    f.case_kind = kind == "case1" ? CaseKind::kCase1 : CaseKind::kCase2;
    f.allocation_ms = detail::get_number(fj, "allocation_ms", fctx);
    f.end_to_end_ms = detail::get_number(fj, "end_to_end_ms", fctx);
    f.deadline_ms = detail::get_number(fj, "deadline_ms", fctx);
    f.met_deadline = detail::require_field(fj, "met_deadline", fctx).get<bool>();
    f.total_accuracy = detail::get_number(fj, "total_accuracy", fctx);
    f.peak_memory_mib = detail::get_number(fj, "peak_memory_mib", fctx);
    f.memory_capacity_mib = detail::get_number(fj, "memory_capacity_mib", fctx);
    f.valid = detail::require_field(fj, "valid", fctx).get<bool>();
    f.verdict = detail::get_string(fj, "verdict", fctx);
    for (const auto& aj : detail::require_field(fj, "per_app", fctx)) {
      AppExecution a;
      a.name = detail::get_string(aj, "name", fctx);
      a.config = BitConfig::parse(detail::get_string(aj, "config", fctx));
      a.grant_mib = detail::get_number(aj, "grant_mib", fctx);
      a.reconfig_ms = detail::get_number(aj, "reconfig_ms", fctx);
      a.exec_ms = detail::get_number(aj, "exec_ms", fctx);
      a.restore_ms = detail::get_number(aj, "restore_ms", fctx);
      a.start_ms = detail::get_number(aj, "start_ms", fctx);
      a.finish_ms = detail::get_number(aj, "finish_ms", fctx);
      a.accuracy_pct = detail::get_number(aj, "accuracy_pct", fctx);
      a.peak_memory_mib = detail::get_number(aj, "peak_memory_mib", fctx);
      a.resident_after_mib = detail::get_number(aj, "resident_after_mib", fctx);
      f.per_app.push_back(std::move(a));
    }
    r.frames.push_back(std::move(f));
  }
  return r;
}

std::string trace_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "frame,case,deadline_ms,end_to_end_ms,met,total_accuracy,peak_memory_mib\n";
  for (const auto& f : report.frames) {
    out << f.frame_index << ',' << (f.case_kind == CaseKind::kCase1 ? "case1" : "case2") << ','
        << format_double(f.deadline_ms) << ',' << format_double(f.end_to_end_ms) << ',' << (f.met_deadline ? 1 : 0)
        << ',' << format_double(f.total_accuracy) << ',' << format_double(f.peak_memory_mib) << '\n';
  }
  return out.str();
}

}  // namespace dynamix
