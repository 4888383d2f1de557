#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynamix/allocator.hpp"
#include "dynamix/lut.hpp"
#include "dynamix/profiles.hpp"

namespace dynamix {

// Fixture constants for the three reference apps.
inline constexpr double kMuVggMib = 228.0;
inline constexpr double kMuResnetMib = 273.0;
inline constexpr double kMuYoloMib = 323.0;
inline constexpr double kMuTotalMib = kMuVggMib + kMuResnetMib + kMuYoloMib;
inline constexpr double kDefaultMemoryCapacityMib = 1600.0;
inline constexpr double kDefaultEpsilonMs = 15.0;
inline constexpr double kDefaultAccuracyDropThresholdPct = 3.0;

struct SjfJob {
  std::string name;
  double estimated_latency_ms = 0.0;
};

/// Non-preemptive shortest job first: ascending estimate, ties by name.
std::vector<std::string> sjf_order(std::vector<SjfJob> jobs);

/// Everything the runtime needs for one app, prepared offline.
struct ScenarioApp {
  ProfiledApp profiled;
  LookupTable lut;
  double lambda = 1.0;

  const std::string& name() const noexcept { return profiled.app.name; }
};

ScenarioApp prepare_app(const AppSpec& app, std::size_t lut_entries = kDefaultLutEntries,
                        double lambda = 1.0);

enum class EventKind { kAppStart, kAppStop, kDeadlineChange, kMemoryChange };

std::string_view to_string(EventKind kind);

struct ScenarioEvent {
  double at_ms = 0.0;
  EventKind kind = EventKind::kAppStart;
  std::string app;     ///< for start/stop
  double value = 0.0;  ///< new deadline (ms) or capacity (MiB)

  friend bool operator==(const ScenarioEvent&, const ScenarioEvent&) = default;
};

/// Apps without an AppStart event are running from t = 0; the others start
/// at their first AppStart. Events take effect at the next frame arrival.
struct Scenario {
  std::vector<ScenarioApp> apps;
  double initial_deadline_ms = 700.0;
  double memory_capacity_mib = kDefaultMemoryCapacityMib;
  double epsilon_ms = kDefaultEpsilonMs;
  double frame_period_ms = 1000.0;
  double duration_ms = 0.0;
  std::vector<ScenarioEvent> events;

  void validate() const;
};

enum class CaseKind { kCase1, kCase2 };

struct AppExecution {
  std::string name;
  BitConfig config;
  double grant_mib = 0.0;
  double reconfig_ms = 0.0;
  double exec_ms = 0.0;
  double restore_ms = 0.0;
  double start_ms = 0.0;
  double finish_ms = 0.0;
  double accuracy_pct = 0.0;
  double peak_memory_mib = 0.0;
  double resident_after_mib = 0.0;

  friend bool operator==(const AppExecution&, const AppExecution&) = default;
};

struct FrameTrace {
  std::size_t frame_index = 0;
  double arrival_ms = 0.0;
  CaseKind case_kind = CaseKind::kCase2;
  double allocation_ms = 0.0;
  std::vector<AppExecution> per_app;
  double end_to_end_ms = 0.0;
  double deadline_ms = 0.0;
  bool met_deadline = true;
  double total_accuracy = 0.0;
  double peak_memory_mib = 0.0;  ///< system-wide, including co-resident base models
  double memory_capacity_mib = 0.0;
  bool valid = true;
  std::string verdict;  ///< why the frame is invalid, empty otherwise

  friend bool operator==(const FrameTrace&, const FrameTrace&) = default;
};

struct SimReport {
  std::vector<FrameTrace> frames;
  std::size_t deadline_miss_count = 0;
  double min_memory_margin_mib = 0.0;
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> accuracy_series;
  std::size_t allocator_invocations = 0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Wall-clock solver time per Case1 frame. Kept out of SimReport so the
/// report stays deterministic.
struct SimTimings {
  std::vector<std::pair<std::size_t, double>> solver_wall_ms;
};

/// Discrete-event replay. Throws FeasibilityError when the apps running at
/// t = 0 cannot be allocated.
SimReport run_scenario(const Scenario& scenario, SimTimings* timings = nullptr);

/// The allocation problem for the `active` apps, with mu_i summed
/// over every other registered app's base model.
AllocationProblem make_allocation_problem(const std::vector<ScenarioApp>& registered,
                                          const std::vector<std::size_t>& active, double deadline_ms,
                                          double epsilon_ms, double memory_capacity_mib);

struct BaselineMember {
  std::size_t fp_layer_count = 0;
  double wcet_ms = 0.0;
  double peak_memory_mib = 0.0;
  bool faster = false;
  bool smaller = false;
  bool dominates = false;
};

/// Family members against loading the whole FP model at once.
struct BaselineReport {
  double baseline_latency_ms = 0.0;
  double baseline_memory_mib = 0.0;
  std::vector<BaselineMember> members;
  double faster_fraction = 0.0;
  double dominating_fraction = 0.0;
  double quantized_latency_ratio = 0.0;  ///< baseline / fully-quantized
  double quantized_memory_ratio = 0.0;
};

BaselineReport baseline_compare(const AppSpec& app, double full_fp_load_ms);
std::string baseline_to_csv(const BaselineReport& report);

struct SweepApp {
  AppAllocation allocation;  ///< mu_mib is recomputed from base memories
  double base_memory_mib = 0.0;
};

SweepApp sweep_app_from(const ProfiledApp& app, double lambda = 1.0);

enum class CellStatus { kValid, kDeadlineInfeasible, kMemoryInfeasible, kAccuracyDrop };

std::string_view to_string(CellStatus status);

struct SweepCell {
  double deadline_ms = 0.0;
  double memory_mib = 0.0;
  CellStatus status = CellStatus::kValid;
  double total_accuracy = 0.0;  ///< NaN for infeasible cells
};

struct SweepOptions {
  double epsilon_ms = kDefaultEpsilonMs;
  double accuracy_drop_threshold_pct = kDefaultAccuracyDropThresholdPct;
  /// Use grid_oracle at this step instead of the SQP solver.
  std::optional<double> oracle_step_mib;
};

/// Row-major over deadlines (outer) and capacities (inner). A cell is an
/// AccuracyDrop when its total accuracy is more than threshold percent
/// below the total with every app at its upper bound.
std::vector<SweepCell> robustness_sweep(const std::vector<SweepApp>& apps,
                                        const std::vector<double>& deadlines_ms,
                                        const std::vector<double>& capacities_mib,
                                        const SweepOptions& options = {});

std::string sweep_to_csv(const std::vector<SweepCell>& cells, const SweepOptions& options);

/// `base_dir` resolves relative app-spec references.
Scenario scenario_from_json(std::string_view text, const std::string& base_dir = ".");
Scenario load_scenario_file(const std::string& path);
std::string report_to_json(const SimReport& report);
SimReport report_from_json(std::string_view text);
std::string trace_to_csv(const SimReport& report);

}  // namespace dynamix
