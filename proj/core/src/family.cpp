#include "dynamix/family.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dynamix/error.hpp"
#include "json_util.hpp"

namespace dynamix {

BitConfig BitConfig::parse(std::string_view text) {
  std::vector<PrecisionLevel> levels;
  levels.reserve(text.size());
  for (char c : text) {
    if (c == 'F') {
      levels.push_back(PrecisionLevel::kFP32);
    } else if (c == 'I') {
      levels.push_back(PrecisionLevel::kINT8);
    } else {
      throw Error(ErrorKind::kParse, "bit config must contain only 'F' and 'I', got '" + std::string(text) + "'");
    }
  }
  return BitConfig(std::move(levels));
}

std::string BitConfig::to_string() const {
  std::string out;
  out.reserve(per_layer_.size());
  for (PrecisionLevel level : per_layer_) out += level == PrecisionLevel::kFP32 ? 'F' : 'I';
  return out;
}

std::size_t BitConfig::fp_count() const noexcept {
  return static_cast<std::size_t>(std::count(per_layer_.begin(), per_layer_.end(), PrecisionLevel::kFP32));
}

namespace {

void check_length(const AppSpec& app, const BitConfig& config) {
  if (config.size() != app.layer_count()) {
    throw Error(ErrorKind::kDimension, "config has " + std::to_string(config.size()) + " layers, app '" + app.name +
                                           "' has " + std::to_string(app.layer_count()));
  }
}

}  // namespace

ExecutionCost execution_cost(const AppSpec& app, const BitConfig& config) {
  check_length(app, config);
  ExecutionCost cost;
  for (std::size_t i = 0; i < app.layers.size(); ++i) {
    const LayerSpec& layer = app.layers[i];
    if (config[i] == PrecisionLevel::kFP32) {
      cost.reconfig_ms += layer.load_fp_ms;
      cost.exec_ms += layer.fp_latency_ms;
    } else {
      cost.exec_ms += layer.int_latency_ms;
    }
  }
  cost.restore_ms = app.restore_ms;
  return cost;
}

CompressedModel evaluate_config(const AppSpec& app, const BitConfig& config) {
  check_length(app, config);
  std::uint64_t extra_bytes = 0;
  double sensitivity_sum = 0.0;
  for (std::size_t i = 0; i < app.layers.size(); ++i) {
    const LayerSpec& layer = app.layers[i];
    if (config[i] == PrecisionLevel::kFP32) {
      extra_bytes += layer.fp_bytes - layer.int_bytes;
    } else {
      sensitivity_sum += layer.sensitivity;
    }
  }
  CompressedModel model;
  model.config = config;
  model.fp_layer_count = config.fp_count();
  model.sensitivity_sum = sensitivity_sum;
  model.peak_memory_mib = app.base_memory_mib + static_cast<double>(extra_bytes) / kBytesPerMiB;
  model.wcet_ms = execution_cost(app, config).total();
  model.accuracy_pct = std::clamp(app.fp_accuracy_pct - app.accuracy_decay_per_nat * sensitivity_sum, 0.0, 100.0);
  return model;
}

std::vector<std::size_t> sensitivity_order(const AppSpec& app) {
  std::vector<std::size_t> order(app.layers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return app.layers[a].sensitivity > app.layers[b].sensitivity;
  });
  return order;
}

std::vector<CompressedModel> build_family(const AppSpec& app) {
  app.validate();
  std::vector<CompressedModel> family;
  family.reserve(app.layer_count() + 1);
  BitConfig config = BitConfig::all(app.layer_count(), PrecisionLevel::kINT8);
  family.push_back(evaluate_config(app, config));
  for (std::size_t layer : sensitivity_order(app)) {
    config[layer] = PrecisionLevel::kFP32;
    family.push_back(evaluate_config(app, config));
  }
  return family;
}

std::string family_to_csv(const std::vector<CompressedModel>& models) {
  using detail::format_double;
  std::ostringstream out;
  out << "fp_layer_count,peak_memory_mib,wcet_ms,accuracy_pct,sensitivity_sum,config\n";
  for (const CompressedModel& m : models) {
    out << m.fp_layer_count << ',' << format_double(m.peak_memory_mib) << ',' << format_double(m.wcet_ms) << ','
        << format_double(m.accuracy_pct) << ',' << format_double(m.sensitivity_sum) << ',' << m.config.to_string()
        << '\n';
  }
  return out.str();
}

}  // namespace dynamix
