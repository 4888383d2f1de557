#include "dynamix/workload.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <numeric>

#include "dynamix/error.hpp"
#include "json_util.hpp"

namespace dynamix {

namespace {

[[noreturn]] void layer_error(std::size_t index, std::string_view field, std::string_view what) {
  throw Error(ErrorKind::kValidation,
              "layer " + std::to_string(index) + ": " + std::string(field) + " " + std::string(what));
}

void require_non_negative(double value, std::size_t index, std::string_view field) {
  if (!(value >= 0.0) || !std::isfinite(value)) layer_error(index, field, "must be finite and >= 0");
}

}  // namespace

void AppSpec::validate() const {
  if (name.empty()) throw Error(ErrorKind::kValidation, "app name must not be empty");
  if (layers.empty()) throw Error(ErrorKind::kValidation, "app '" + name + "' has no layers");
  if (!(base_memory_mib > 0.0) || !std::isfinite(base_memory_mib)) {
    throw Error(ErrorKind::kValidation, "base_memory_mib must be > 0");
  }
  if (!(fp_accuracy_pct > 0.0 && fp_accuracy_pct <= 100.0)) {
    throw Error(ErrorKind::kValidation, "fp_accuracy_pct must lie in (0, 100]");
  }
  if (!(accuracy_decay_per_nat >= 0.0) || !std::isfinite(accuracy_decay_per_nat)) {
    throw Error(ErrorKind::kValidation, "accuracy_decay_per_nat must be finite and >= 0");
  }
  if (!(restore_ms >= 0.0) || !std::isfinite(restore_ms)) {
    throw Error(ErrorKind::kValidation, "restore_ms must be finite and >= 0");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& layer = layers[i];
    if (layer.index != i) layer_error(i, "index", "must equal its position " + std::to_string(i));
    if (layer.int_bytes > layer.fp_bytes) layer_error(i, "int_bytes", "exceeds fp_bytes");
    require_non_negative(layer.fp_latency_ms, i, "fp_latency_ms");
    require_non_negative(layer.int_latency_ms, i, "int_latency_ms");
    require_non_negative(layer.load_fp_ms, i, "load_fp_ms");
    require_non_negative(layer.sensitivity, i, "sensitivity");
    if (layer.int_latency_ms > layer.fp_latency_ms) layer_error(i, "int_latency_ms", "exceeds fp_latency_ms");
  }
}

OutputSample::OutputSample(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorKind::kEmptyInput, "output sample has no entries");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::kDomain, "probabilities must be > 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorKind::kDomain, "probabilities must sum to 1");
}

OutputSample OutputSample::from_raw(std::vector<double> probs) {
  for (double& p : probs) p = std::max(p, kProbabilityFloor);
  double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= sum;
  return OutputSample(std::move(probs));
}

double kl_divergence(const OutputSample& p, const OutputSample& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::kDimension, "KL divergence of samples with " + std::to_string(p.size()) + " and " +
                                           std::to_string(q.size()) + " entries");
  }
  double total = 0.0;
  auto ps = p.probs();
  auto qs = q.probs();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double pi = std::max(ps[i], kProbabilityFloor);
    double qi = std::max(qs[i], kProbabilityFloor);
    total += pi * std::log(pi / qi);
  }
  // Rounding can leave a tiny negative value for identical inputs.
  return std::max(total, 0.0);
}

double layer_sensitivity(std::span<const OutputSample> full_outputs, std::span<const OutputSample> quant_outputs) {
  if (full_outputs.empty() || quant_outputs.empty()) {
    throw Error(ErrorKind::kEmptyInput, "sensitivity needs at least one sample");
  }
  if (full_outputs.size() != quant_outputs.size()) {
    throw Error(ErrorKind::kDimension, "full and quantized sample lists differ in length");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < full_outputs.size(); ++j) sum += kl_divergence(full_outputs[j], quant_outputs[j]);
  return sum / static_cast<double>(full_outputs.size());
}

double measure_sensitivity(const OutputSampler& full, const OutputSampler& quantized, std::size_t sample_count) {
  std::vector<OutputSample> a, b;
  a.reserve(sample_count);
  b.reserve(sample_count);
  for (std::size_t j = 0; j < sample_count; ++j) {
    a.push_back(full(j));
    b.push_back(quantized(j));
  }
  return layer_sensitivity(a, b);
}

AppSpec app_spec_from_json(std::string_view text) {
  using detail::get_number;
  auto doc = detail::parse_document(text, "app spec");
  detail::require_only_keys(
      doc, {"name", "base_memory_mib", "fp_accuracy_pct", "accuracy_decay_per_nat", "restore_ms", "layers"}, "app");
  AppSpec app;
  app.name = detail::get_string(doc, "name", "app");
  app.base_memory_mib = get_number(doc, "base_memory_mib", "app");
  app.fp_accuracy_pct = get_number(doc, "fp_accuracy_pct", "app");
  app.accuracy_decay_per_nat = get_number(doc, "accuracy_decay_per_nat", "app");
  app.restore_ms = get_number(doc, "restore_ms", "app");
  const auto& layers = detail::require_field(doc, "layers", "app");
  if (!layers.is_array()) throw Error(ErrorKind::kParse, "app.layers: expected an array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& node = layers[i];
    const std::string ctx = "app.layers[" + std::to_string(i) + "]";
    detail::require_only_keys(node,
                              {"index", "op_kind", "param_count", "fp_bytes", "int_bytes", "fp_latency_ms",
                               "int_latency_ms", "load_fp_ms", "sensitivity"},
                              ctx);
    LayerSpec layer;
    layer.index = detail::get_unsigned(node, "index", ctx);
    layer.op_kind = detail::get_string(node, "op_kind", ctx);
    layer.param_count = detail::get_unsigned(node, "param_count", ctx);
    layer.fp_bytes = detail::get_unsigned(node, "fp_bytes", ctx);
    layer.int_bytes = detail::get_unsigned(node, "int_bytes", ctx);
    layer.fp_latency_ms = get_number(node, "fp_latency_ms", ctx);
    layer.int_latency_ms = get_number(node, "int_latency_ms", ctx);
    layer.load_fp_ms = get_number(node, "load_fp_ms", ctx);
    layer.sensitivity = get_number(node, "sensitivity", ctx);
    app.layers.push_back(std::move(layer));
  }
  app.validate();
  return app;
}

AppSpec load_app_spec(std::istream& source) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return app_spec_from_json(text);
}

AppSpec load_app_spec_file(const std::string& path) { return app_spec_from_json(detail::read_file(path)); }

std::string app_spec_to_json(const AppSpec& app) {
  detail::json layers = detail::json::array();
  for (const LayerSpec& l : app.layers) {
    layers.push_back({{"index", l.index},
                      {"op_kind", l.op_kind},
                      {"param_count", l.param_count},
                      {"fp_bytes", l.fp_bytes},
                      {"int_bytes", l.int_bytes},
                      {"fp_latency_ms", l.fp_latency_ms},
                      {"int_latency_ms", l.int_latency_ms},
                      {"load_fp_ms", l.load_fp_ms},
                      {"sensitivity", l.sensitivity}});
  }
  detail::json doc = {{"name", app.name},
                      {"base_memory_mib", app.base_memory_mib},
                      {"fp_accuracy_pct", app.fp_accuracy_pct},
                      {"accuracy_decay_per_nat", app.accuracy_decay_per_nat},
                      {"restore_ms", app.restore_ms},
                      {"layers", std::move(layers)}};
  return doc.dump(2) + "\n";
}

}  // namespace dynamix
