#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynamix/cubic.hpp"

namespace dynamix {

/// The two precisions a layer can execute at.
enum class PrecisionLevel : std::uint8_t { kFP32, kINT8 };

struct LayerSpec {
  std::size_t index = 0;
  std::string op_kind;
  std::uint64_t param_count = 0;
  std::uint64_t fp_bytes = 0;
  std::uint64_t int_bytes = 0;
  double fp_latency_ms = 0.0;
  double int_latency_ms = 0.0;
  double load_fp_ms = 0.0;  ///< cost of lazily loading this layer's FP weights
  double sensitivity = 0.0;  ///< nats

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// A layered workload model. base_memory_mib is the memory held resident by
/// the fully-quantized base model; accuracy_decay_per_nat maps cumulative
/// sensitivity of INT8 layers to an accuracy drop.
struct AppSpec {
  std::string name;
  std::vector<LayerSpec> layers;
  double base_memory_mib = 0.0;
  double fp_accuracy_pct = 0.0;
  double accuracy_decay_per_nat = 0.0;
  double restore_ms = 0.0;

  std::size_t layer_count() const noexcept { return layers.size(); }

  /// Throws kValidation naming the offending layer index and field.
  void validate() const;

  friend bool operator==(const AppSpec&, const AppSpec&) = default;
};

/// A probability vector: strictly positive entries summing to one.
class OutputSample {
 public:
  /// Throws kDomain when an entry is non-positive or the sum is off by > 1e-9.
  explicit OutputSample(std::vector<double> probs);

  /// Clamps entries to the probability floor and renormalizes. Use for raw
  /// model outputs that may contain exact zeros.
  static OutputSample from_raw(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr std::size_t kDefaultSensitivitySamples = 32;

/// sum_i p_i ln(p_i / q_i) in nats.
double kl_divergence(const OutputSample& p, const OutputSample& q);

/// Mean KL divergence between paired full-precision and quantized outputs.
double layer_sensitivity(std::span<const OutputSample> full_outputs,
                         std::span<const OutputSample> quant_outputs);

/// Produces the model output for input sample j.
using OutputSampler = std::function<OutputSample(std::size_t sample_index)>;

/// Draws `sample_count` inputs through both samplers and returns their
/// layer_sensitivity.
double measure_sensitivity(const OutputSampler& full, const OutputSampler& quantized,
                           std::size_t sample_count = kDefaultSensitivitySamples);

AppSpec load_app_spec(std::istream& source);
AppSpec app_spec_from_json(std::string_view text);
AppSpec load_app_spec_file(const std::string& path);
std::string app_spec_to_json(const AppSpec& app);

struct SynthesisOptions {
  std::size_t layer_count = 1;
  std::uint64_t seed = 0;
  std::optional<CubicProfile> target_latency;
  std::optional<CubicProfile> target_accuracy;
  std::string name = "app";
};

/// Maximum relative deviation of a calibrated family from its targets.
inline constexpr double kCalibrationTolerance = 0.05;

/// Deterministic synthetic workload. With target profiles, the generated
/// family tracks the targets within kCalibrationTolerance at every family
/// point; otherwise layers are drawn at random within the invariants.
/// Throws kCalibration when a target cannot be reached.
AppSpec synthesize_workload(const SynthesisOptions& options);

}  // namespace dynamix
