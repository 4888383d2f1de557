#include <benchmark/benchmark.h>

#include <random>

#include "dynamix/allocator.hpp"
#include "dynamix/family.hpp"
#include "dynamix/lut.hpp"
#include "dynamix/profiles.hpp"
#include "dynamix/workload.hpp"

namespace {

using namespace dynamix;

AppSpec synthetic_app(std::size_t layers) {
  SynthesisOptions opt;
  opt.layer_count = layers;
  opt.seed = 42;
  return synthesize_workload(opt);
}

CubicProfile make_profile(ProfileKind kind, CubicCoefficients c, double lo, double hi) {
  CubicProfile p;
  p.kind = kind;
  p.coeffs = c;
  p.domain_min_mib = lo;
  p.domain_max_mib = hi;
  return p;
}

AllocationProblem three_app_problem() {
  AllocationProblem p;
  p.deadline_ms = 500;
  p.epsilon_ms = 15;
  p.memory_capacity_mib = 1600;
  const struct {
    const char* name;
    CubicCoefficients lat, acc;
    double lo, hi, base;
  } apps[] = {
      {"yolo", {-6.706e-06, 0.01861, -15.5, 4241}, {6.764e-08, -0.0001834, 0.1676, 2.821}, 640, 1100, 640},
      {"vgg16", {-0.0001472, 0.1135, -28.16, 2267}, {-7.781e-07, 0.0006417, -0.1753, 108.4}, 240, 300, 240},
      {"resnet50", {1.021e-05, -0.01083, 4.648, -683}, {1.285e-07, -0.000181, 0.08553, 62.48}, 300, 520, 300},
  };
  double all_base = 0.0;
  for (const auto& a : apps) all_base += a.base;
  for (const auto& a : apps) {
    AppAllocation x;
    x.name = a.name;
    x.latency_profile = make_profile(ProfileKind::kLatencyMs, a.lat, a.lo, a.hi);
    x.accuracy_profile = make_profile(ProfileKind::kAccuracyPct, a.acc, a.lo, a.hi);
    x.lower_mib = a.lo;
    x.upper_mib = a.hi;
    x.mu_mib = all_base - a.base;
    p.apps.push_back(x);
  }
  return p;
}

void BM_BuildFamily(benchmark::State& state) {
  const AppSpec app = synthetic_app(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_family(app));
}
BENCHMARK(BM_BuildFamily)->Arg(16)->Arg(75)->Arg(200);

void BM_FitCubic(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ProfilePoint> pts;
  for (int k = 0; k < state.range(0); ++k) pts.push_back({100.0 + k, 50.0 + 0.2 * k + u(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(fit_cubic(pts));
}
BENCHMARK(BM_FitCubic)->Arg(50)->Arg(200);

void BM_ProfileApp(benchmark::State& state) {
  const AppSpec app = synthetic_app(75);
  for (auto _ : state) benchmark::DoNotOptimize(profile_app(app));
}
BENCHMARK(BM_ProfileApp);

void BM_BuildLut(benchmark::State& state) {
  const auto family = build_family(synthetic_app(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(build_lut(family));
}
BENCHMARK(BM_BuildLut)->Arg(75)->Arg(200);

void BM_QueryLut(benchmark::State& state) {
  const auto table = build_lut(build_family(synthetic_app(200)));
  const double lo = table.min_mib(), span = table.max_mib() - table.min_mib();
  double t = 0.0;
  for (auto _ : state) {
    t = t + 0.618033988749895;
    if (t >= 1.0) t -= 1.0;
    benchmark::DoNotOptimize(query_lut(table, lo + t * span));
  }
}
BENCHMARK(BM_QueryLut);

void BM_SolveThreeApps(benchmark::State& state) {
  const auto p = three_app_problem();
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_SolveThreeApps)->Unit(benchmark::kMillisecond);

void BM_GridOracleThreeApps(benchmark::State& state) {
  const auto p = three_app_problem();
  const double step = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle(p, step));
}
BENCHMARK(BM_GridOracleThreeApps)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
