#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dynamix/allocator.hpp"
#include "dynamix/family.hpp"
#include "dynamix/lut.hpp"
#include "dynamix/profiles.hpp"
#include "dynamix/simulator.hpp"
#include "dynamix/workload.hpp"

namespace dynamix::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCalibration:
      return kExitCalibration;
    case ErrorKind::kDegeneracy:
    case ErrorKind::kUnderdetermined:
      return kExitDegeneracy;
    case ErrorKind::kFeasibility:
    case ErrorKind::kNoFittingModel:
      return kExitInfeasible;
    case ErrorKind::kConvergence:
      return kExitFailure;
    default:
      return kExitInput;
  }
}

/// "profiles/yolo_latency.json" -> "yolo"
std::string app_name_from(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  for (std::string_view suffix : {"_latency", "_accuracy", ".latency", ".accuracy"}) {
    if (stem.size() > suffix.size() && stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return stem.substr(0, stem.size() - suffix.size());
    }
  }
  return stem;
}

std::vector<double> range_values(const std::vector<double>& spec, const std::string& flag) {
  if (spec.size() != 3 || !(spec[2] > 0.0) || spec[1] < spec[0]) {
    throw Error(ErrorKind::kValidation, flag + " needs START STOP STEP with STEP > 0 and STOP >= START");
  }
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double v = spec[0] + static_cast<double>(k) * spec[2];
    if (v > spec[1] + 1e-9 * std::abs(spec[1])) break;
    out.push_back(v);
  }
  return out;
}

struct Globals {
  unsigned long long seed = 0;
  std::string out_dir = ".";
  bool quiet = false;
};

struct GenerateArgs {
  long long layers = 0;
  std::string name = "app";
  std::vector<std::string> calibrate;
  std::string latency_profile;
  std::string accuracy_profile;
  std::string output;
};

struct PipelineArgs {
  std::string app;
  std::size_t lut_entries = kDefaultLutEntries;
};

struct ProfilePairArgs {
  std::vector<std::vector<std::string>> apps;
  std::vector<double> lambda;
  std::vector<double> mu_mib;
  std::vector<double> lower_mib;
  std::vector<double> upper_mib;
  double epsilon_ms = kDefaultEpsilonMs;
  std::optional<double> oracle_step;
};

struct AllocateArgs {
  ProfilePairArgs pairs;
  std::string problem;
  std::optional<double> deadline_ms;
  double memory_mib = kDefaultMemoryCapacityMib;
  std::string output = "solution.json";
};

struct SimulateArgs {
  std::string scenario;
  std::string output;
};

struct SweepArgs {
  ProfilePairArgs pairs;
  std::vector<std::string> app_specs;
  std::vector<double> base_mib;
  std::vector<double> deadlines;
  std::vector<double> memories;
  std::vector<double> deadline_range;
  std::vector<double> memory_range;
  double threshold_pct = kDefaultAccuracyDropThresholdPct;
  std::string output = "sweep.csv";
};

struct BaselineArgs {
  std::string app;
  double full_fp_load_ms = 0.0;
  std::string output;
};

void print(const Globals& g, std::ostream& out, const std::string& line) {
  if (!g.quiet) out << line << '\n';
}

std::vector<AppAllocation> allocations_from(const ProfilePairArgs& a) {
  std::vector<AppAllocation> apps;
  auto pick = [&](const std::vector<double>& v, std::size_t i, const char* flag) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    if (v.size() != a.apps.size()) {
      throw Error(ErrorKind::kValidation, std::string(flag) + " needs one value per --app");
    }
    return v[i];
  };
  for (std::size_t i = 0; i < a.apps.size(); ++i) {
    AppAllocation app;
    app.latency_profile = load_profile_file(a.apps[i].at(0));
    app.accuracy_profile = load_profile_file(a.apps[i].at(1));
    if (app.latency_profile.kind != ProfileKind::kLatencyMs || app.accuracy_profile.kind != ProfileKind::kAccuracyPct) {
      throw Error(ErrorKind::kValidation, "--app expects LATENCY_PROFILE ACCURACY_PROFILE in that order");
    }
    app.name = app_name_from(a.apps[i][0]);
    app.lambda = pick(a.lambda, i, "--lambda").value_or(1.0);
    app.mu_mib = pick(a.mu_mib, i, "--mu-mib").value_or(0.0);
    app.lower_mib = pick(a.lower_mib, i, "--lower-mib")
                        .value_or(std::max(app.latency_profile.domain_min_mib, app.accuracy_profile.domain_min_mib));
    app.upper_mib = pick(a.upper_mib, i, "--upper-mib")
                        .value_or(std::min(app.latency_profile.domain_max_mib, app.accuracy_profile.domain_max_mib));
    apps.push_back(std::move(app));
  }
  return apps;
}

void add_profile_pair_options(CLI::App* sub, ProfilePairArgs& a) {
  sub->add_option("--app", a.apps, "LATENCY_PROFILE ACCURACY_PROFILE (repeatable)")->expected(2);
  sub->add_option("--lambda", a.lambda, "Per-app weights")->delimiter(',');
  sub->add_option("--mu-mib", a.mu_mib, "Per-app co-resident base memory")->delimiter(',');
  sub->add_option("--lower-mib", a.lower_mib, "Per-app lower bounds")->delimiter(',');
  sub->add_option("--upper-mib", a.upper_mib, "Per-app upper bounds")->delimiter(',');
  sub->add_option("--epsilon-ms", a.epsilon_ms, "Allocation overhead budget");
  sub->add_option("--oracle-step", a.oracle_step, "Grid oracle step in MiB");
}

int cmd_generate(const GenerateArgs& a, const Globals& g, std::ostream& out) {
  if (a.layers < 1) throw Error(ErrorKind::kValidation, "--layers must be >= 1");
  SynthesisOptions opt;
  opt.layer_count = static_cast<std::size_t>(a.layers);
  opt.seed = g.seed;
  opt.name = a.name;
  std::string lat = a.latency_profile, acc = a.accuracy_profile;
  if (!a.calibrate.empty()) {
    lat = a.calibrate.at(0);
    acc = a.calibrate.at(1);
  }
  RunManifest manifest("generate", g.out_dir, g.seed);
  if (!lat.empty()) {
    opt.target_latency = load_profile_file(lat);
    manifest.add_input(lat);
  }
  if (!acc.empty()) {
    opt.target_accuracy = load_profile_file(acc);
    manifest.add_input(acc);
  }
  manifest.set_parameter("layers", std::to_string(a.layers));
  manifest.set_parameter("name", a.name);
  const AppSpec app = synthesize_workload(opt);
  manifest.declare(a.output.empty() ? a.name + ".app.json" : a.output, app_spec_to_json(app));
  for (const auto& p : manifest.commit()) print(g, out, "wrote " + p);
  return kExitOk;
}

int cmd_pipeline(const PipelineArgs& a, const Globals& g, std::ostream& out) {
  const AppSpec app = load_app_spec_file(a.app);
  RunManifest manifest("pipeline", g.out_dir, g.seed);
  manifest.add_input(a.app);
  manifest.set_parameter("lut_entries", std::to_string(a.lut_entries));
  const auto family = build_family(app);
  const auto latency = build_latency_profile(family);
  const auto accuracy = build_accuracy_profile(latency.retained);
  const auto lut = build_lut(latency.retained, a.lut_entries, app.name);
  manifest.declare(app.name + ".family.csv", family_to_csv(family));
  manifest.declare(app.name + ".retained.csv", family_to_csv(latency.retained));
  manifest.declare(app.name + "_latency.json", profile_to_json(latency.profile));
  manifest.declare(app.name + "_accuracy.json", profile_to_json(accuracy));
  manifest.declare(app.name + ".lut.json", lut_to_json(lut));
  for (const auto& p : manifest.commit()) print(g, out, "wrote " + p);
  print(g, out,
        "family=" + std::to_string(family.size()) + " retained=" + std::to_string(latency.retained.size()) +
            " lut_entries=" + std::to_string(lut.size()));
  return kExitOk;
}

int report_infeasible(const FeasibilityError& e, std::ostream& out, std::ostream& err) {
  out << "verdict=" << to_string(e.verdict()) << '\n';
  err << "error: " << e.what() << '\n';
  return kExitInfeasible;
}

int cmd_allocate(const AllocateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  RunManifest manifest("allocate", g.out_dir, g.seed);
  AllocationProblem problem;
  if (!a.problem.empty()) {
    problem = problem_from_json(read_text(a.problem));
    manifest.add_input(a.problem);
  } else {
    if (a.pairs.apps.empty()) throw Error(ErrorKind::kValidation, "give --problem or at least one --app");
    if (!a.deadline_ms) throw Error(ErrorKind::kValidation, "--deadline-ms is required");
    problem.apps = allocations_from(a.pairs);
    for (const auto& pair : a.pairs.apps) {
      for (const auto& p : pair) manifest.add_input(p);
    }
    problem.deadline_ms = *a.deadline_ms;
    problem.epsilon_ms = a.pairs.epsilon_ms;
    problem.memory_capacity_mib = a.memory_mib;
    problem.validate();
  }
  if (!a.problem.empty() && a.deadline_ms) problem.deadline_ms = *a.deadline_ms;
  manifest.set_parameter("deadline_ms", num(problem.deadline_ms));
  manifest.set_parameter("epsilon_ms", num(problem.epsilon_ms));
  manifest.set_parameter("memory_mib", num(problem.memory_capacity_mib));

  SolverOptions options;
  options.seed = g.seed;
  AllocationSolution solution;
  std::optional<AllocationSolution> oracle;
  try {
    solution = solve(problem, options);
    if (a.pairs.oracle_step) oracle = grid_oracle(problem, *a.pairs.oracle_step);
  } catch (const FeasibilityError& e) {
    return report_infeasible(e, out, err);
  }
  manifest.declare("problem.json", problem_to_json(problem));
  manifest.declare(a.output, solution_to_json(solution, problem));
  for (const auto& p : manifest.commit()) print(g, out, "wrote " + p);
  for (std::size_t i = 0; i < problem.apps.size(); ++i) {
    print(g, out,
          "app=" + problem.apps[i].name + " grant_mib=" + num(solution.grants_mib[i]) +
              " latency_ms=" + num(solution.predicted_latency_ms[i]) +
              " accuracy_pct=" + num(solution.predicted_accuracy_pct[i]));
  }
  print(g, out,
        "total_accuracy=" + num(solution.total_accuracy) + " slack_ms=" + num(solution.latency_slack_ms) +
            " kkt_residual=" + num(solution.kkt_residual));
  if (oracle) {
    print(g, out,
          "oracle_total_accuracy=" + num(oracle->total_accuracy) +
              " gap=" + num(oracle->total_accuracy - solution.total_accuracy));
  }
  return kExitOk;
}

int cmd_simulate(const SimulateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario_file(a.scenario);
  RunManifest manifest("simulate", g.out_dir, g.seed);
  manifest.add_input(a.scenario);
  SimReport report;
  try {
    report = run_scenario(scenario);
  } catch (const FeasibilityError& e) {
    return report_infeasible(e, out, err);
  }
  const std::string stem = a.output.empty() ? fs::path(a.scenario).stem().string() : a.output;
  manifest.declare(stem + ".report.json", report_to_json(report));
  manifest.declare(stem + ".trace.csv", trace_to_csv(report));
  for (const auto& p : manifest.commit()) print(g, out, "wrote " + p);
  print(g, out,
        "misses=" + std::to_string(report.deadline_miss_count) + " min_margin=" + num(report.min_memory_margin_mib) +
            " frames=" + std::to_string(report.frames.size()));
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a, const Globals& g, std::ostream& out) {
  RunManifest manifest("sweep", g.out_dir, g.seed);
  std::vector<SweepApp> apps;
  for (const auto& path : a.app_specs) {
    apps.push_back(sweep_app_from(profile_app(load_app_spec_file(path))));
    manifest.add_input(path);
  }
  if (!a.pairs.apps.empty()) {
    const auto allocations = allocations_from(a.pairs);
    if (!a.base_mib.empty() && a.base_mib.size() != allocations.size()) {
      throw Error(ErrorKind::kValidation, "--base-mib needs one value per --app");
    }
    for (std::size_t i = 0; i < allocations.size(); ++i) {
      SweepApp s;
      s.allocation = allocations[i];
      s.base_memory_mib = a.base_mib.empty() ? allocations[i].lower_mib : a.base_mib[i];
      apps.push_back(std::move(s));
      for (const auto& p : a.pairs.apps[i]) manifest.add_input(p);
    }
  }
  if (apps.empty()) throw Error(ErrorKind::kValidation, "give at least one --app or --app-spec");
  std::vector<double> deadlines = a.deadlines;
  std::vector<double> memories = a.memories;
  if (!a.deadline_range.empty()) {
    const auto r = range_values(a.deadline_range, "--deadline-range");
    deadlines.insert(deadlines.end(), r.begin(), r.end());
  }
  if (!a.memory_range.empty()) {
    const auto r = range_values(a.memory_range, "--memory-range");
    memories.insert(memories.end(), r.begin(), r.end());
  }
  SweepOptions options;
  options.epsilon_ms = a.pairs.epsilon_ms;
  options.accuracy_drop_threshold_pct = a.threshold_pct;
  options.oracle_step_mib = a.pairs.oracle_step;
  manifest.set_parameter("threshold_pct", num(a.threshold_pct));
  manifest.set_parameter("epsilon_ms", num(a.pairs.epsilon_ms));
  const auto cells = robustness_sweep(apps, deadlines, memories, options);
  manifest.declare(a.output, sweep_to_csv(cells, options));
  for (const auto& p : manifest.commit()) print(g, out, "wrote " + p);
  std::size_t valid = 0;
  for (const auto& c : cells) valid += c.status == CellStatus::kValid;
  print(g, out, "cells=" + std::to_string(cells.size()) + " valid=" + std::to_string(valid));
  return kExitOk;
}

int cmd_baseline(const BaselineArgs& a, const Globals& g, std::ostream& out) {
  const AppSpec app = load_app_spec_file(a.app);
  RunManifest manifest("compare-baseline", g.out_dir, g.seed);
  manifest.add_input(a.app);
  manifest.set_parameter("full_fp_load_ms", num(a.full_fp_load_ms));
  const auto report = baseline_compare(app, a.full_fp_load_ms);
  manifest.declare(a.output.empty() ? app.name + ".baseline.csv" : a.output, baseline_to_csv(report));
  for (const auto& p : manifest.commit()) print(g, out, "wrote " + p);
  print(g, out,
        "faster_fraction=" + num(report.faster_fraction) + " dominating_fraction=" + num(report.dominating_fraction) +
            " quantized_latency_ratio=" + num(report.quantized_latency_ratio) +
            " quantized_memory_ratio=" + num(report.quantized_memory_ratio));
  return kExitOk;
}

}  // namespace

RunManifest::RunManifest(std::string command, std::string out_dir, unsigned long long seed)
    : command_(std::move(command)), out_dir_(std::move(out_dir)), seed_(seed) {}

void RunManifest::add_input(const std::string& path) { inputs_.push_back(path); }

void RunManifest::set_parameter(const std::string& key, const std::string& value) { parameters_[key] = value; }

void RunManifest::declare(const std::string& relative_path, std::string content) {
  if (contents_.count(relative_path) != 0) {
    throw Error(ErrorKind::kValidation, "output '" + relative_path + "' declared twice");
  }
  order_.push_back(relative_path);
  contents_[relative_path] = std::move(content);
}

std::string RunManifest::manifest_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command_;
  doc["seed"] = seed_;
  doc["inputs"] = inputs_;
  doc["outputs"] = order_;
  doc["parameters"] = parameters_;
  return doc.dump(2) + "\n";
}

std::vector<std::string> RunManifest::commit() const {
  const fs::path dir(out_dir_);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create '" + out_dir_ + "': " + ec.message());
  std::vector<std::pair<fs::path, const std::string*>> files;
  const std::string manifest = manifest_json();
  for (const auto& rel : order_) files.emplace_back(dir / rel, &contents_.at(rel));
  files.emplace_back(dir / (command_ + ".manifest.json"), &manifest);

  // Stage everything first so a failed write leaves no partial outputs.
  std::vector<fs::path> staged;
  for (const auto& [path, content] : files) {
    fs::path tmp = path;
    tmp += ".tmp";
    std::ofstream f(tmp, std::ios::binary);
    if (!(f << *content) || !f.flush()) {
      for (const auto& s : staged) fs::remove(s, ec);
      throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
    }
    staged.push_back(tmp);
  }
  std::vector<std::string> written;
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(staged[i], files[i].first);
    written.push_back(files[i].first.string());
  }
  return written;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Memory-aware mixed-precision model allocation toolkit", "dynamix"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--out-dir", g.out_dir, "Directory for output files");
  app.add_flag("--quiet", g.quiet, "Suppress summary output");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Synthesize an app spec");
  generate->add_option("--layers", gen.layers, "Layer count")->required();
  generate->add_option("--name", gen.name, "App name");
  generate->add_option("--calibrate", gen.calibrate, "LATENCY_PROFILE ACCURACY_PROFILE")->expected(2);
  generate->add_option("--latency-profile", gen.latency_profile, "Latency calibration target");
  generate->add_option("--accuracy-profile", gen.accuracy_profile, "Accuracy calibration target");
  generate->add_option("-o,--output", gen.output, "Output file");

  PipelineArgs pipe;
  auto* pipeline = app.add_subcommand("pipeline", "Family, profiles and lookup table for an app spec");
  pipeline->add_option("--app", pipe.app, "App spec file")->required();
  pipeline->add_option("--lut-entries", pipe.lut_entries, "Lookup table size z");

  AllocateArgs alloc;
  auto* allocate = app.add_subcommand("allocate", "Solve the memory allocation problem");
  add_profile_pair_options(allocate, alloc.pairs);
  allocate->add_option("--problem", alloc.problem, "Allocation problem JSON");
  allocate->add_option("--deadline-ms", alloc.deadline_ms, "Deadline D");
  allocate->add_option("--memory-mib", alloc.memory_mib, "Memory capacity");
  allocate->add_option("-o,--output", alloc.output, "Solution file");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Replay a scenario");
  simulate->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
  simulate->add_option("-o,--output", sim.output, "Output file stem");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Validity grid over deadline and memory capacity");
  add_profile_pair_options(sweep, sw.pairs);
  sweep->add_option("--app-spec", sw.app_specs, "App spec file (repeatable)");
  sweep->add_option("--base-mib", sw.base_mib, "Per-app base memory for --app")->delimiter(',');
  sweep->add_option("--deadlines", sw.deadlines, "Deadlines in ms")->delimiter(',');
  sweep->add_option("--memories", sw.memories, "Capacities in MiB")->delimiter(',');
  sweep->add_option("--deadline-range", sw.deadline_range, "START STOP STEP")->expected(3);
  sweep->add_option("--memory-range", sw.memory_range, "START STOP STEP")->expected(3);
  sweep->add_option("--threshold-pct", sw.threshold_pct, "Accuracy drop threshold");
  sweep->add_option("-o,--output", sw.output, "Output CSV");

  BaselineArgs base;
  auto* baseline = app.add_subcommand("compare-baseline", "Family members against full-model loading");
  baseline->add_option("--app", base.app, "App spec file")->required();
  baseline->add_option("--full-fp-load-ms", base.full_fp_load_ms, "Time to load the whole FP model")->required();
  baseline->add_option("-o,--output", base.output, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*generate) return cmd_generate(gen, g, out);
    if (*pipeline) return cmd_pipeline(pipe, g, out);
    if (*allocate) return cmd_allocate(alloc, g, out, err);
    if (*simulate) return cmd_simulate(sim, g, out, err);
    if (*sweep) return cmd_sweep(sw, g, out);
    if (*baseline) return cmd_baseline(base, g, out);
  } catch (const FeasibilityError& e) {
    return report_infeasible(e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInput;
}

}  // namespace dynamix::cli
