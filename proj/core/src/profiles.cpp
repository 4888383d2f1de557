#include "dynamix/profiles.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dynamix/error.hpp"

namespace dynamix {

namespace {

std::size_t distinct_x_count(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return static_cast<std::size_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
}

std::size_t distinct_peaks(const std::vector<CompressedModel>& models) {
  std::vector<double> xs;
  xs.reserve(models.size());
  for (const auto& m : models) xs.push_back(m.peak_memory_mib);
  return distinct_x_count(std::move(xs));
}

std::vector<ProfilePoint> points_of(const std::vector<CompressedModel>& models, bool latency) {
  std::vector<ProfilePoint> pts;
  pts.reserve(models.size());
  for (const auto& m : models) pts.push_back({m.peak_memory_mib, latency ? m.wcet_ms : m.accuracy_pct});
  return pts;
}

std::vector<CompressedModel> sorted_by_memory(std::vector<CompressedModel> models) {
  std::stable_sort(models.begin(), models.end(), [](const CompressedModel& a, const CompressedModel& b) {
    return a.peak_memory_mib < b.peak_memory_mib;
  });
  return models;
}

}  // namespace

CubicCoefficients fit_cubic(std::span<const ProfilePoint> points) {
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const auto& p : points) {
    if (!std::isfinite(p.x_mib) || !std::isfinite(p.y)) throw Error(ErrorKind::kDomain, "non-finite fit point");
    xs.push_back(p.x_mib);
  }
  if (distinct_x_count(xs) < 4) {
    throw Error(ErrorKind::kUnderdetermined, "cubic fit needs at least 4 distinct x values");
  }
  const auto [min_it, max_it] = std::minmax_element(xs.begin(), xs.end());
  const double center = 0.5 * (*min_it + *max_it);
  const double half_width = 0.5 * (*max_it - *min_it);

  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd basis(rows, 4);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = (points[static_cast<std::size_t>(r)].x_mib - center) / half_width;
    basis(r, 0) = 1.0;
    basis(r, 1) = t;
    basis(r, 2) = t * t;
    basis(r, 3) = t * t * t;
    y(r) = points[static_cast<std::size_t>(r)].y;
  }
  const Eigen::Vector4d b = basis.householderQr().solve(y);

  // Substitute t = alpha * x + beta back into the scaled polynomial.
  const double alpha = 1.0 / half_width;
  const double beta = -center / half_width;
  CubicCoefficients c;
  c.c3 = b(3) * alpha * alpha * alpha;
  c.c2 = b(2) * alpha * alpha + 3.0 * b(3) * alpha * alpha * beta;
  c.c1 = b(1) * alpha + 2.0 * b(2) * alpha * beta + 3.0 * b(3) * alpha * beta * beta;
  c.c0 = b(0) + b(1) * beta + b(2) * beta * beta + b(3) * beta * beta * beta;
  return c;
}

std::vector<CompressedModel> envelope_filter(std::vector<CompressedModel> models) {
  models = sorted_by_memory(std::move(models));
  std::vector<CompressedModel> kept;
  for (auto& m : models) {
    if (kept.empty() || m.wcet_ms > kept.back().wcet_ms) kept.push_back(std::move(m));
  }
  return kept;
}

LatencyProfileResult build_latency_profile(const std::vector<CompressedModel>& models) {
  const auto envelope = envelope_filter(models);
  if (distinct_peaks(envelope) < 4) {
    throw Error(ErrorKind::kDegeneracy, "latency envelope has fewer than 4 distinct peak-memory points (" +
                                            std::to_string(models.size()) + " models)");
  }
  const auto pts = points_of(envelope, true);
  LatencyProfileResult out;
  out.profile.kind = ProfileKind::kLatencyMs;
  out.profile.coeffs = fit_cubic(pts);
  for (const auto& m : sorted_by_memory(models)) {
    if (m.wcet_ms <= out.profile.coeffs(m.peak_memory_mib) + kCoverageToleranceMs) out.retained.push_back(m);
  }
  if (distinct_peaks(out.retained) < 4) {
    throw Error(ErrorKind::kDegeneracy, "only " + std::to_string(out.retained.size()) +
                                            " models are covered by the latency profile; need 4 distinct points");
  }
  out.profile.domain_min_mib = out.retained.front().peak_memory_mib;
  out.profile.domain_max_mib = out.retained.back().peak_memory_mib;
  return out;
}

CubicProfile build_accuracy_profile(const std::vector<CompressedModel>& retained) {
  const auto pts = points_of(retained, false);
  CubicProfile p;
  p.kind = ProfileKind::kAccuracyPct;
  p.coeffs = fit_cubic(pts);
  const auto [lo, hi] = std::minmax_element(retained.begin(), retained.end(),
                                            [](const CompressedModel& a, const CompressedModel& b) {
                                              return a.peak_memory_mib < b.peak_memory_mib;
                                            });
  p.domain_min_mib = lo->peak_memory_mib;
  p.domain_max_mib = hi->peak_memory_mib;
  return p;
}

ProfiledApp profile_app(const AppSpec& app) {
  ProfiledApp out;
  out.app = app;
  out.family = build_family(app);
  auto latency = build_latency_profile(out.family);
  out.latency_profile = latency.profile;
  out.retained_models = std::move(latency.retained);
  out.accuracy_profile = build_accuracy_profile(out.retained_models);
  return out;
}

}  // namespace dynamix
