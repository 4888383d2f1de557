#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynamix/error.hpp"
#include "dynamix/family.hpp"
#include "dynamix/workload.hpp"
#include "json_util.hpp"
#include "random.hpp"

namespace dynamix {

namespace {

using detail::format_double;
using detail::Rng;

std::string op_kind_for(std::size_t index, std::size_t count) { return index + 1 == count ? "fc" : "conv"; }

AppSpec random_workload(const SynthesisOptions& opt, Rng& rng) {
  AppSpec app;
  app.name = opt.name;
  double int_mib = 0.0;
  for (std::size_t i = 0; i < opt.layer_count; ++i) {
    LayerSpec l;
    l.index = i;
    l.op_kind = op_kind_for(i, opt.layer_count);
    l.param_count = 10'000 + rng.below(4'000'000);
    l.int_bytes = l.param_count;
    l.fp_bytes = 4 * l.param_count;
    l.int_latency_ms = rng.uniform(0.2, 8.0);
    l.fp_latency_ms = l.int_latency_ms * rng.uniform(1.5, 4.0);
    l.load_fp_ms = static_cast<double>(l.fp_bytes) / kBytesPerMiB * rng.uniform(0.05, 0.2);
    double u = rng.unit();
    l.sensitivity = 0.5 * u * u;
    int_mib += static_cast<double>(l.int_bytes) / kBytesPerMiB;
    app.layers.push_back(std::move(l));
  }
  app.base_memory_mib = int_mib + rng.uniform(50.0, 300.0);
  app.fp_accuracy_pct = rng.uniform(60.0, 95.0);
  double total_sensitivity = 0.0;
  for (const auto& l : app.layers) total_sensitivity += l.sensitivity;
  double decay = rng.uniform(0.5, 5.0);
  // Keep the fully-quantized model above half the FP accuracy.
  if (total_sensitivity > 0.0) decay = std::min(decay, 0.5 * app.fp_accuracy_pct / total_sensitivity);
  app.accuracy_decay_per_nat = decay;
  app.restore_ms = rng.uniform(0.5, 5.0);
  return app;
}

/// Decreasing isotonic regression (pool adjacent violators), unit weights.
std::vector<double> decreasing_isotonic(const std::vector<double>& values) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      Block last = blocks.back();
      blocks.pop_back();
      blocks.back().sum += last.sum;
      blocks.back().count += last.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

std::vector<double> random_weights(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& v : w) v = rng.uniform(0.5, 1.5);
  return w;
}

[[noreturn]] void calibration_error(const std::string& what) { throw Error(ErrorKind::kCalibration, what); }

/// Family-position quantities: position k is the k-th layer switched to FP.
struct PositionPlan {
  std::vector<std::uint64_t> extra_bytes;  // fp_bytes - int_bytes
  std::vector<double> int_latency;
  std::vector<double> latency_step;  // load_fp + fp - int
  std::vector<double> load_fraction;
  std::vector<double> sensitivity;
  double restore_ms = 0.0;
  double base_memory_mib = 0.0;
  double fp_accuracy_pct = 0.0;
  double decay = 0.0;
};

AppSpec calibrated_workload(const SynthesisOptions& opt, Rng& rng) {
  const std::size_t n = opt.layer_count;
  const CubicProfile& domain_source = opt.target_latency ? *opt.target_latency : *opt.target_accuracy;
  const double lo = domain_source.domain_min_mib;
  const double hi = domain_source.domain_max_mib;
  if (!(lo > 0.0 && lo < hi)) calibration_error("target domain must satisfy 0 < min < max");

  PositionPlan plan;
  plan.base_memory_mib = lo;

  // Memory: random positive steps spanning the domain exactly (to the byte).
  const auto span_bytes = static_cast<std::uint64_t>(std::llround((hi - lo) * kBytesPerMiB));
  if (span_bytes < n) calibration_error("target memory range too small for " + std::to_string(n) + " layers");
  auto weights = random_weights(rng, n);
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  plan.extra_bytes.resize(n);
  std::uint64_t assigned = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t b = k + 1 == n ? span_bytes - assigned
                                 : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(
                                                                  static_cast<double>(span_bytes) * weights[k] / weight_sum)));
    if (k + 1 < n) b = std::min(b, span_bytes - assigned - (n - 1 - k));
    plan.extra_bytes[k] = b;
    assigned += b;
  }
  std::vector<double> x(n + 1);
  std::uint64_t cumulative = 0;
  x[0] = lo;
  for (std::size_t k = 0; k < n; ++k) {
    cumulative += plan.extra_bytes[k];
    x[k + 1] = lo + static_cast<double>(cumulative) / kBytesPerMiB;
  }

  // Latency along the family.
  std::vector<double> wcet(n + 1);
  if (opt.target_latency) {
    for (std::size_t k = 0; k <= n; ++k) {
      double y = opt.target_latency->coeffs(x[k]);
      if (!(y > 0.0)) {
        calibration_error("target latency " + format_double(y) + " ms at " + format_double(x[k]) +
                          " MiB is not positive");
      }
      wcet[k] = k == 0 ? y : std::max(wcet[k - 1], y);
    }
  } else {
    wcet[0] = rng.uniform(20.0, 100.0);
    for (std::size_t k = 0; k < n; ++k) wcet[k + 1] = wcet[k] + rng.uniform(0.5, 10.0);
  }
  plan.restore_ms = wcet[0] * rng.uniform(0.01, 0.03);
  {
    auto w = random_weights(rng, n);
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    plan.int_latency.resize(n);
    for (std::size_t k = 0; k < n; ++k) plan.int_latency[k] = (wcet[0] - plan.restore_ms) * w[k] / s;
  }
  plan.latency_step.resize(n);
  plan.load_fraction.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    plan.latency_step[k] = wcet[k + 1] - wcet[k];
    plan.load_fraction[k] = rng.uniform(0.15, 0.35);
  }

  // Accuracy along the family: increments must be non-negative and
  // non-increasing, because sensitivities are sorted in descending order.
  std::vector<double> increments(n);
  if (opt.target_accuracy) {
    std::vector<double> t(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      t[k] = opt.target_accuracy->coeffs(x[k]);
      if (!(t[k] > 0.0 && t[k] <= 100.0)) {
        calibration_error("target accuracy " + format_double(t[k]) + "% at " + format_double(x[k]) +
                          " MiB is outside (0, 100]");
      }
    }
    std::vector<double> raw(n);
    for (std::size_t k = 0; k < n; ++k) raw[k] = std::max(0.0, t[k + 1] - t[k]);
    increments = decreasing_isotonic(raw);
    plan.fp_accuracy_pct = t[n];
  } else {
    for (double& d : increments) d = rng.uniform(0.0, 1.0);
    std::sort(increments.begin(), increments.end(), std::greater<>());
    plan.fp_accuracy_pct = rng.uniform(60.0, 95.0);
    double total = std::accumulate(increments.begin(), increments.end(), 0.0);
    double scale = 0.3 * plan.fp_accuracy_pct / std::max(total, 1e-12);
    for (double& d : increments) d *= std::min(scale, 1.0);
  }
  const double largest = *std::max_element(increments.begin(), increments.end());
  plan.decay = largest > 0.0 ? largest / rng.uniform(0.2, 1.0) : 1.0;
  plan.sensitivity.resize(n);
  for (std::size_t k = 0; k < n; ++k) plan.sensitivity[k] = increments[k] / plan.decay;

  // Random layer index per position; equal sensitivities must appear in
  // ascending index order to match the family's tie-break.
  std::vector<std::size_t> layer_at(n);
  std::iota(layer_at.begin(), layer_at.end(), 0);
  rng.shuffle(layer_at);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && plan.sensitivity[end] == plan.sensitivity[start]) ++end;
    std::sort(layer_at.begin() + static_cast<std::ptrdiff_t>(start), layer_at.begin() + static_cast<std::ptrdiff_t>(end));
    start = end;
  }

  AppSpec app;
  app.name = opt.name;
  app.base_memory_mib = plan.base_memory_mib;
  app.fp_accuracy_pct = plan.fp_accuracy_pct;
  app.accuracy_decay_per_nat = plan.decay;
  app.restore_ms = plan.restore_ms;
  app.layers.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    LayerSpec& l = app.layers[layer_at[k]];
    l.index = layer_at[k];
    l.op_kind = op_kind_for(l.index, n);
    l.int_bytes = plan.extra_bytes[k] / 3;
    l.fp_bytes = l.int_bytes + plan.extra_bytes[k];
    l.param_count = l.int_bytes;
    l.int_latency_ms = plan.int_latency[k];
    l.load_fp_ms = plan.load_fraction[k] * plan.latency_step[k];
    l.fp_latency_ms = l.int_latency_ms + (plan.latency_step[k] - l.load_fp_ms);
    l.sensitivity = plan.sensitivity[k];
  }
  return app;
}

void verify_calibration(const AppSpec& app, const SynthesisOptions& opt) {
  auto within = [](double got, double want) { return std::abs(got - want) <= kCalibrationTolerance * std::abs(want); };
  for (const CompressedModel& m : build_family(app)) {
    if (opt.target_latency) {
      double want = opt.target_latency->coeffs(m.peak_memory_mib);
      if (!within(m.wcet_ms, want)) {
        calibration_error("family point at " + format_double(m.peak_memory_mib) + " MiB has latency " +
                          format_double(m.wcet_ms) + " ms, target " + format_double(want) + " ms");
      }
    }
    if (opt.target_accuracy) {
      double want = opt.target_accuracy->coeffs(m.peak_memory_mib);
      if (!within(m.accuracy_pct, want)) {
        calibration_error("family point at " + format_double(m.peak_memory_mib) + " MiB has accuracy " +
                          format_double(m.accuracy_pct) + "%, target " + format_double(want) + "%");
      }
    }
  }
}

}  // namespace

AppSpec synthesize_workload(const SynthesisOptions& options) {
  if (options.layer_count < 1) throw Error(ErrorKind::kValidation, "layer_count must be >= 1");
  if (options.name.empty()) throw Error(ErrorKind::kValidation, "app name must not be empty");
  Rng rng(options.seed);
  const bool calibrate = options.target_latency.has_value() || options.target_accuracy.has_value();
  for (const auto* target : {&options.target_latency, &options.target_accuracy}) {
    if (*target && !((*target)->domain_min_mib < (*target)->domain_max_mib)) {
      throw Error(ErrorKind::kValidation, "target profile domain must satisfy domain_min_mib < domain_max_mib");
    }
  }
  if (options.target_latency) {
    const auto& t = *options.target_latency;
    if (cubic_extrema(t.coeffs, t.domain_min_mib, t.domain_max_mib).min_value <= 0.0) {
      calibration_error("target latency is not positive over [" + detail::format_double(t.domain_min_mib) + ", " +
                        detail::format_double(t.domain_max_mib) + "] MiB");
    }
  }
  AppSpec app = calibrate ? calibrated_workload(options, rng) : random_workload(options, rng);
  app.validate();
  if (calibrate) verify_calibration(app, options);
  return app;
}

}  // namespace dynamix
