#include "dynamix/cubic.hpp"

#include <cmath>

#include "dynamix/error.hpp"
#include "json_util.hpp"

namespace dynamix {

std::string_view to_string(ProfileKind kind) {
  return kind == ProfileKind::kLatencyMs ? "latency_ms" : "accuracy_pct";
}

ProfileKind profile_kind_from_string(std::string_view text) {
  if (text == "latency_ms") return ProfileKind::kLatencyMs;
  if (text == "accuracy_pct") return ProfileKind::kAccuracyPct;
  throw Error(ErrorKind::kParse, "unknown profile kind '" + std::string(text) + "'");
}

void CubicProfile::validate() const {
  if (!(domain_min_mib < domain_max_mib)) {
    throw Error(ErrorKind::kValidation, "profile domain must satisfy domain_min_mib < domain_max_mib");
  }
  if (kind == ProfileKind::kLatencyMs && (coeffs(domain_min_mib) < 0.0 || coeffs(domain_max_mib) < 0.0)) {
    throw Error(ErrorKind::kValidation, "latency profile is negative at a domain endpoint");
  }
}

double eval_profile(const CubicProfile& profile, double x_mib) {
  if (!profile.contains(x_mib)) {
    throw Error(ErrorKind::kDomain, "x = " + detail::format_double(x_mib) + " MiB outside profile domain [" +
                                        detail::format_double(profile.domain_min_mib) + ", " +
                                        detail::format_double(profile.domain_max_mib) + "]");
  }
  return profile.coeffs(x_mib);
}

CubicExtrema cubic_extrema(const CubicCoefficients& c, double lo, double hi) {
  CubicExtrema out{lo, c(lo), lo, c(lo)};
  auto consider = [&](double x) {
    if (!(x >= lo && x <= hi)) return;
    double v = c(x);
    if (v < out.min_value) out = {x, v, out.max_x, out.max_value};
    if (v > out.max_value) out = {out.min_x, out.min_value, x, v};
  };
  consider(hi);
  // Derivative 3a x^2 + 2b x + c.
  const double qa = 3.0 * c.c3, qb = 2.0 * c.c2, qc = c.c1;
  if (qa == 0.0) {
    if (qb != 0.0) consider(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      double s = std::sqrt(disc);
      // Numerically stable pair of roots.
      double q = -0.5 * (qb + std::copysign(s, qb));
      if (q != 0.0) {
        consider(q / qa);
        consider(qc / q);
      } else {
        consider(0.0);
      }
    }
  }
  return out;
}

std::string profile_to_json(const CubicProfile& profile) {
  detail::json doc = {
      {"kind", std::string(to_string(profile.kind))},
      {"c3", profile.coeffs.c3},
      {"c2", profile.coeffs.c2},
      {"c1", profile.coeffs.c1},
      {"c0", profile.coeffs.c0},
      {"domain_min_mib", profile.domain_min_mib},
      {"domain_max_mib", profile.domain_max_mib},
  };
  return doc.dump(2) + "\n";
}

CubicProfile profile_from_json(std::string_view text) {
  auto doc = detail::parse_document(text, "profile");
  constexpr std::string_view ctx = "profile";
  detail::require_only_keys(doc, {"kind", "c3", "c2", "c1", "c0", "domain_min_mib", "domain_max_mib"}, ctx);
  CubicProfile p;
  p.kind = profile_kind_from_string(detail::get_string(doc, "kind", ctx));
  p.coeffs = {detail::get_number(doc, "c3", ctx), detail::get_number(doc, "c2", ctx),
              detail::get_number(doc, "c1", ctx), detail::get_number(doc, "c0", ctx)};
  p.domain_min_mib = detail::get_number(doc, "domain_min_mib", ctx);
  p.domain_max_mib = detail::get_number(doc, "domain_max_mib", ctx);
  p.validate();
  return p;
}

CubicProfile load_profile_file(const std::string& path) { return profile_from_json(detail::read_file(path)); }

}  // namespace dynamix
