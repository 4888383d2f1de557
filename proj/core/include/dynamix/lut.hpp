#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dynamix/family.hpp"

namespace dynamix {

struct LutEntry {
  BitConfig config;
  double accuracy_pct = 0.0;
  double peak_memory_mib = 0.0;

  friend bool operator==(const LutEntry&, const LutEntry&) = default;
};

inline constexpr std::size_t kDefaultLutEntries = 50;

/// Constant-size table from memory keys to the best configuration whose peak
/// memory falls in the key's section. Keys are min + n*(max-min)/(z-1) and are
/// stored by their integer step n, so lookups never compare floating keys.
class LookupTable {
 public:
  LookupTable() = default;
  LookupTable(std::string app_name, std::size_t z, double min_mib, double max_mib);

  const std::string& app_name() const noexcept { return app_name_; }
  std::size_t z() const noexcept { return z_; }
  double min_mib() const noexcept { return min_mib_; }
  double max_mib() const noexcept { return max_mib_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Memory value of key step n.
  double key_mib(std::size_t step) const;
  /// Smallest step whose key is >= x (ceiling mapping used when building).
  std::size_t ceil_step(double x_mib) const;
  /// Largest step whose key is <= x, clamped to z-1 (floor mapping for queries).
  std::size_t floor_step(double x_mib) const;

  const std::map<std::size_t, LutEntry>& entries() const noexcept { return entries_; }
  void insert(std::size_t step, LutEntry entry);

  friend bool operator==(const LookupTable&, const LookupTable&) = default;

 private:
  std::string app_name_;
  std::size_t z_ = 0;
  double min_mib_ = 0.0;
  double max_mib_ = 0.0;
  std::map<std::size_t, LutEntry> entries_;
};

LookupTable build_lut(const std::vector<CompressedModel>& models, std::size_t z = kDefaultLutEntries,
                      std::string app_name = {});

struct LutHit {
  std::size_t step = 0;
  double key_mib = 0.0;
  LutEntry entry;
};

/// Floor-key lookup with fallback to the nearest smaller populated key.
/// Throws kNoFittingModel when nothing fits.
LutHit query_lut(const LookupTable& table, double grant_mib);

std::string lut_to_json(const LookupTable& table);
LookupTable lut_from_json(std::string_view text);

}  // namespace dynamix
