#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dynamix/cubic.hpp"
#include "dynamix/family.hpp"

namespace dynamix {

struct ProfilePoint {
  double x_mib;
  double y;
};

/// Least-squares cubic through `points`. The fit runs on x rescaled to
/// [-1, 1] with a Householder QR, and the coefficients are mapped back to
/// the original units. Needs at least four distinct x values.
CubicCoefficients fit_cubic(std::span<const ProfilePoint> points);

/// Sorts by ascending peak memory and keeps each model whose latency is
/// strictly greater than every kept model with less memory.
std::vector<CompressedModel> envelope_filter(std::vector<CompressedModel> models);

/// Absolute slack (ms) when checking that the profile covers a model.
inline constexpr double kCoverageToleranceMs = 1e-9;

struct LatencyProfileResult {
  CubicProfile profile;
  std::vector<CompressedModel> retained;
};

/// Fits the envelope, then drops every model the curve does not cover.
/// Throws kDegeneracy when fewer than four models survive.
LatencyProfileResult build_latency_profile(const std::vector<CompressedModel>& models);

/// Cubic over (peak_memory_mib, accuracy_pct) of the retained models, no pruning.
CubicProfile build_accuracy_profile(const std::vector<CompressedModel>& retained);

/// An app with its offline artifacts. mu_mib is filled in when a concrete
/// co-residency set is known.
struct ProfiledApp {
  AppSpec app;
  std::vector<CompressedModel> family;
  CubicProfile latency_profile;
  CubicProfile accuracy_profile;
  std::vector<CompressedModel> retained_models;
  double mu_mib = 0.0;

  double lower_mib() const noexcept { return latency_profile.domain_min_mib; }
  double upper_mib() const noexcept { return latency_profile.domain_max_mib; }
};

/// build_family, build_latency_profile and build_accuracy_profile in sequence.
ProfiledApp profile_app(const AppSpec& app);

}  // namespace dynamix
