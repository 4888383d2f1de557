#pragma once

#include <array>
#include <string>
#include <string_view>

namespace dynamix {

enum class ProfileKind { kLatencyMs, kAccuracyPct };

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view text);

/// Coefficients of c3*x^3 + c2*x^2 + c1*x + c0, x in MiB.
struct CubicCoefficients {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double x) const noexcept { return ((c3 * x + c2) * x + c1) * x + c0; }
  double derivative(double x) const noexcept { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
  double second_derivative(double x) const noexcept { return 6.0 * c3 * x + 2.0 * c2; }

  friend bool operator==(const CubicCoefficients&, const CubicCoefficients&) = default;
};

/// A worst-case latency or most-likely accuracy profile over peak memory.
/// Evaluation outside [domain_min_mib, domain_max_mib] is rejected.
struct CubicProfile {
  CubicCoefficients coeffs;
  double domain_min_mib = 0.0;
  double domain_max_mib = 0.0;
  ProfileKind kind = ProfileKind::kLatencyMs;

  /// Throws kValidation when the domain is empty or a latency profile is
  /// negative at either endpoint.
  void validate() const;

  bool contains(double x) const noexcept { return x >= domain_min_mib && x <= domain_max_mib; }

  friend bool operator==(const CubicProfile&, const CubicProfile&) = default;
};

/// c3*x^3 + c2*x^2 + c1*x + c0. Throws kDomain outside the profile domain.
double eval_profile(const CubicProfile& profile, double x_mib);

/// Minimum and maximum of a cubic over [lo, hi], found from the endpoints and
/// the real roots of the derivative.
struct CubicExtrema {
  double min_x, min_value, max_x, max_value;
};
CubicExtrema cubic_extrema(const CubicCoefficients& c, double lo, double hi);

std::string profile_to_json(const CubicProfile& profile);
CubicProfile profile_from_json(std::string_view text);
CubicProfile load_profile_file(const std::string& path);

}  // namespace dynamix
