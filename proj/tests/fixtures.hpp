#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dynamix/cubic.hpp"
#include "dynamix/error.hpp"
#include "dynamix/family.hpp"
#include "dynamix/workload.hpp"

namespace dynamix::testing {

inline std::string data_path(const std::string& relative) { return std::string(DYNAMIX_DATA_DIR) + "/" + relative; }

inline CubicProfile cubic(ProfileKind kind, double c3, double c2, double c1, double c0, double lo, double hi) {
  CubicProfile p;
  p.kind = kind;
  p.coeffs = {c3, c2, c1, c0};
  p.domain_min_mib = lo;
  p.domain_max_mib = hi;
  return p;
}

// Reference latency / accuracy cubics of the three benchmark networks.
inline CubicProfile yolo_latency(double lo = 640, double hi = 1100) {
  return cubic(ProfileKind::kLatencyMs, -6.706e-06, 0.01861, -15.5, 4241, lo, hi);
}
inline CubicProfile yolo_accuracy(double lo = 640, double hi = 1100) {
  return cubic(ProfileKind::kAccuracyPct, 6.764e-08, -0.0001834, 0.1676, 2.821, lo, hi);
}
inline CubicProfile vgg_latency(double lo = 240, double hi = 300) {
  return cubic(ProfileKind::kLatencyMs, -0.0001472, 0.1135, -28.16, 2267, lo, hi);
}
inline CubicProfile vgg_accuracy(double lo = 240, double hi = 300) {
  return cubic(ProfileKind::kAccuracyPct, -7.781e-07, 0.0006417, -0.1753, 108.4, lo, hi);
}
inline CubicProfile resnet_latency(double lo = 300, double hi = 520) {
  return cubic(ProfileKind::kLatencyMs, 1.021e-05, -0.01083, 4.648, -683, lo, hi);
}
inline CubicProfile resnet_accuracy(double lo = 300, double hi = 520) {
  return cubic(ProfileKind::kAccuracyPct, 1.285e-07, -0.000181, 0.08553, 62.48, lo, hi);
}

inline AppSpec random_app(std::size_t layers, std::uint64_t seed) {
  SynthesisOptions opt;
  opt.layer_count = layers;
  opt.seed = seed;
  opt.name = "rand" + std::to_string(seed);
  return synthesize_workload(opt);
}

inline AppSpec calibrated_app(const std::string& name, std::size_t layers, std::uint64_t seed,
                              const CubicProfile& latency, const CubicProfile& accuracy) {
  SynthesisOptions opt;
  opt.layer_count = layers;
  opt.seed = seed;
  opt.name = name;
  opt.target_latency = latency;
  opt.target_accuracy = accuracy;
  return synthesize_workload(opt);
}

/// Whole-model load time that puts the full-load baseline level with the
/// family member holding round(fp_fraction * L) FP layers, floored at zero.
inline double break_even_load_ms(const AppSpec& app, double fp_fraction) {
  const auto family = build_family(app);
  const auto k = static_cast<std::size_t>(std::lround(fp_fraction * static_cast<double>(app.layer_count())));
  double fp_exec = 0.0;
  for (const auto& l : app.layers) fp_exec += l.fp_latency_ms;
  return std::max(0.0, family[k].wcet_ms - fp_exec);
}

}  // namespace dynamix::testing
