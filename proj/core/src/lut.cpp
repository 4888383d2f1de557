#include "dynamix/lut.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dynamix/error.hpp"
#include "json_util.hpp"

namespace dynamix {

using detail::format_double;

LookupTable::LookupTable(std::string app_name, std::size_t z, double min_mib, double max_mib)
    : app_name_(std::move(app_name)), z_(z), min_mib_(min_mib), max_mib_(max_mib) {
  if (z < 2) throw Error(ErrorKind::kParameter, "lookup table needs z >= 2, got " + std::to_string(z));
  if (!(std::isfinite(min_mib) && std::isfinite(max_mib))) throw Error(ErrorKind::kDomain, "non-finite key range");
  if (!(min_mib < max_mib)) {
    throw Error(ErrorKind::kDegeneracy, "key range [" + format_double(min_mib) + ", " + format_double(max_mib) +
                                            "] is empty; all models share one peak memory");
  }
}

double LookupTable::key_mib(std::size_t step) const {
  if (step >= z_) throw Error(ErrorKind::kParameter, "key step " + std::to_string(step) + " out of range");
  if (step + 1 == z_) return max_mib_;
  return min_mib_ + static_cast<double>(step) * (max_mib_ - min_mib_) / static_cast<double>(z_ - 1);
}

std::size_t LookupTable::ceil_step(double x_mib) const {
  const double ratio = static_cast<double>(z_ - 1) * (x_mib - min_mib_) / (max_mib_ - min_mib_);
  auto step = static_cast<std::size_t>(std::clamp(std::ceil(ratio), 0.0, static_cast<double>(z_ - 1)));
  while (step > 0 && key_mib(step - 1) >= x_mib) --step;
  while (step + 1 < z_ && key_mib(step) < x_mib) ++step;
  return step;
}

std::size_t LookupTable::floor_step(double x_mib) const {
  if (x_mib >= max_mib_) return z_ - 1;
  const double ratio = static_cast<double>(z_ - 1) * (x_mib - min_mib_) / (max_mib_ - min_mib_);
  auto step = static_cast<std::size_t>(std::clamp(std::floor(ratio), 0.0, static_cast<double>(z_ - 1)));
  while (step + 1 < z_ && key_mib(step + 1) <= x_mib) ++step;
  while (step > 0 && key_mib(step) > x_mib) --step;
  return step;
}

void LookupTable::insert(std::size_t step, LutEntry entry) {
  const double key = key_mib(step);
  if (entry.peak_memory_mib > key) {
    throw Error(ErrorKind::kValidation, "entry peak memory " + format_double(entry.peak_memory_mib) +
                                            " MiB exceeds its key " + format_double(key) + " MiB");
  }
  entries_[step] = std::move(entry);
}

LookupTable build_lut(const std::vector<CompressedModel>& models, std::size_t z, std::string app_name) {
  if (z < 2) throw Error(ErrorKind::kParameter, "lookup table needs z >= 2, got " + std::to_string(z));
  if (models.empty()) throw Error(ErrorKind::kEmptyInput, "no models to tabulate");
  std::vector<const CompressedModel*> sorted;
  sorted.reserve(models.size());
  for (const auto& m : models) sorted.push_back(&m);
  std::stable_sort(sorted.begin(), sorted.end(), [](const CompressedModel* a, const CompressedModel* b) {
    return a->peak_memory_mib < b->peak_memory_mib;
  });
  LookupTable table(std::move(app_name), z, sorted.front()->peak_memory_mib, sorted.back()->peak_memory_mib);

  const CompressedModel* pending = nullptr;
  std::size_t pending_step = 0;
  for (const CompressedModel* m : sorted) {
    const std::size_t step = table.ceil_step(m->peak_memory_mib);
    if (pending == nullptr || step != pending_step) {
      if (pending != nullptr) table.insert(pending_step, {pending->config, pending->accuracy_pct, pending->peak_memory_mib});
      pending = m;
      pending_step = step;
    } else if (m->accuracy_pct > pending->accuracy_pct) {
      pending = m;
    }
  }
  table.insert(pending_step, {pending->config, pending->accuracy_pct, pending->peak_memory_mib});
  return table;
}

LutHit query_lut(const LookupTable& table, double grant_mib) {
  if (!(grant_mib >= table.min_mib())) {
    throw Error(ErrorKind::kNoFittingModel, "grant " + format_double(grant_mib) + " MiB is below the smallest model (" +
                                                format_double(table.min_mib()) + " MiB) of '" + table.app_name() + "'");
  }
  const std::size_t step = table.floor_step(grant_mib);
  auto it = table.entries().upper_bound(step);
  if (it == table.entries().begin()) {
    throw Error(ErrorKind::kNoFittingModel, "no populated key at or below " + format_double(table.key_mib(step)) +
                                                " MiB in '" + table.app_name() + "'");
  }
  --it;
  return {it->first, table.key_mib(it->first), it->second};
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

constexpr std::string_view kKeyMarker = "@key:";

}  // namespace

std::string lut_to_json(const LookupTable& table) {
  detail::json entries = detail::json::array();
  for (const auto& [step, e] : table.entries()) {
    entries.push_back({{"key_mib", std::string(kKeyMarker) + fixed6(table.key_mib(step))},
                       {"config", e.config.to_string()},
                       {"accuracy_pct", e.accuracy_pct},
                       {"peak_memory_mib", e.peak_memory_mib}});
  }
  detail::json doc = {{"app_name", table.app_name()},
                      {"z", table.z()},
                      {"min_mib", table.min_mib()},
                      {"max_mib", table.max_mib()},
                      {"entries", std::move(entries)}};
  std::string text = doc.dump(2);
  // Keys are written as bare decimals with exactly six fractional digits.
  const std::string quoted = "\"" + std::string(kKeyMarker);
  for (std::size_t pos = text.find(quoted); pos != std::string::npos; pos = text.find(quoted, pos)) {
    const std::size_t close = text.find('"', pos + quoted.size());
    text = text.substr(0, pos) + text.substr(pos + quoted.size(), close - pos - quoted.size()) + text.substr(close + 1);
  }
  return text + "\n";
}

LookupTable lut_from_json(std::string_view text) {
  const auto doc = detail::parse_document(text, "lookup table");
  constexpr std::string_view ctx = "lookup table";
  detail::require_only_keys(doc, {"app_name", "z", "min_mib", "max_mib", "entries"}, ctx);
  LookupTable table(detail::get_string(doc, "app_name", ctx), detail::get_unsigned(doc, "z", ctx),
                    detail::get_number(doc, "min_mib", ctx), detail::get_number(doc, "max_mib", ctx));
  const auto& entries = detail::require_field(doc, "entries", ctx);
  if (!entries.is_array()) throw Error(ErrorKind::kParse, "lookup table: 'entries' must be an array");
  const double spacing = (table.max_mib() - table.min_mib()) / static_cast<double>(table.z() - 1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ectx = "entries[" + std::to_string(i) + "]";
    detail::require_only_keys(entries[i], {"key_mib", "config", "accuracy_pct", "peak_memory_mib"}, ectx);
    const double key = detail::get_number(entries[i], "key_mib", ectx);
    const double ratio = (key - table.min_mib()) / spacing;
    if (!(ratio > -0.5 && ratio < static_cast<double>(table.z()) - 0.5)) {
      throw Error(ErrorKind::kParse, ectx + ": key_mib " + format_double(key) + " is outside the key range");
    }
    const auto step = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(table.key_mib(step) - key) > 5e-6 * (1.0 + std::abs(key))) {
      throw Error(ErrorKind::kParse, ectx + ": key_mib " + format_double(key) + " is not on the key grid");
    }
    if (table.entries().count(step) != 0) throw Error(ErrorKind::kParse, ectx + ": duplicate key");
    table.insert(step, {BitConfig::parse(detail::get_string(entries[i], "config", ectx)),
                        detail::get_number(entries[i], "accuracy_pct", ectx),
                        detail::get_number(entries[i], "peak_memory_mib", ectx)});
  }
  return table;
}

}  // namespace dynamix
