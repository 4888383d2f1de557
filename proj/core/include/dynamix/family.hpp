#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dynamix/workload.hpp"

namespace dynamix {

/// One precision per layer, layer 0 first.
class BitConfig {
 public:
  BitConfig() = default;
  explicit BitConfig(std::vector<PrecisionLevel> per_layer) : per_layer_(std::move(per_layer)) {}

  static BitConfig all(std::size_t layer_count, PrecisionLevel level) {
    return BitConfig(std::vector<PrecisionLevel>(layer_count, level));
  }

  /// Parses a string of 'F' / 'I' characters, layer 0 leftmost.
  static BitConfig parse(std::string_view text);
  std::string to_string() const;

  std::size_t size() const noexcept { return per_layer_.size(); }
  PrecisionLevel operator[](std::size_t i) const { return per_layer_[i]; }
  PrecisionLevel& operator[](std::size_t i) { return per_layer_[i]; }
  std::size_t fp_count() const noexcept;

  const std::vector<PrecisionLevel>& levels() const noexcept { return per_layer_; }

  friend bool operator==(const BitConfig&, const BitConfig&) = default;

 private:
  std::vector<PrecisionLevel> per_layer_;
};

struct CompressedModel {
  BitConfig config;
  double peak_memory_mib = 0.0;
  double wcet_ms = 0.0;
  double accuracy_pct = 0.0;
  double sensitivity_sum = 0.0;
  std::size_t fp_layer_count = 0;

  friend bool operator==(const CompressedModel&, const CompressedModel&) = default;
};

/// Per-phase cost of running one configuration once.
struct ExecutionCost {
  double reconfig_ms = 0.0;  ///< lazy FP-layer loading
  double exec_ms = 0.0;
  double restore_ms = 0.0;

  double total() const noexcept { return reconfig_ms + exec_ms + restore_ms; }
};

inline constexpr double kBytesPerMiB = 1024.0 * 1024.0;

ExecutionCost execution_cost(const AppSpec& app, const BitConfig& config);

/// Peak memory, worst-case latency and accuracy of `config` under the cost
/// model. Throws kDimension when the config length differs from the layer count.
CompressedModel evaluate_config(const AppSpec& app, const BitConfig& config);

/// Layer indices by descending sensitivity, ties by ascending index.
std::vector<std::size_t> sensitivity_order(const AppSpec& app);

/// The L+1 sensitivity-ordered family: model k runs the k most sensitive
/// layers at FP32 and the rest at INT8.
std::vector<CompressedModel> build_family(const AppSpec& app);

/// CSV with header
/// fp_layer_count,peak_memory_mib,wcet_ms,accuracy_pct,sensitivity_sum,config
std::string family_to_csv(const std::vector<CompressedModel>& models);

}  // namespace dynamix
