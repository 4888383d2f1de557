#include "dynamix/lut.hpp"

#include <random>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "fixtures.hpp"

namespace dynamix {
namespace {

using testing::kind_of;

CompressedModel model(double peak, double acc, const char* tag = "I") {
  CompressedModel m;
  m.config = BitConfig::parse(tag);
  m.peak_memory_mib = peak;
  m.accuracy_pct = acc;
  return m;
}

// Section of a model: the smallest step whose key is >= its peak memory.
std::size_t section_of(double peak, double lo, double hi, std::size_t z) {
  for (std::size_t n = 0; n < z; ++n) {
    if (lo + static_cast<double>(n) * (hi - lo) / static_cast<double>(z - 1) >= peak) return n;
  }
  return z - 1;
}

std::size_t floor_of(double grant, double lo, double hi, std::size_t z) {
  std::size_t best = 0;
  for (std::size_t n = 0; n < z; ++n) {
    if (lo + static_cast<double>(n) * (hi - lo) / static_cast<double>(z - 1) <= grant) best = n;
  }
  return best;
}

TEST(LookupTableKeys, HandExamples) {
  LookupTable t("a", 5, 100, 500);
  EXPECT_EQ(t.ceil_step(230), 2u);
  EXPECT_EQ(t.key_mib(2), 300);
  EXPECT_EQ(t.ceil_step(100), 0u);
  EXPECT_EQ(t.floor_step(280), 1u);
  EXPECT_EQ(t.key_mib(1), 200);
  EXPECT_EQ(t.floor_step(500), 4u);
  EXPECT_EQ(t.floor_step(900), 4u);
  EXPECT_EQ(t.key_mib(4), 500);
}

TEST(LookupTableKeys, ExactKeysMapToThemselves) {
  LookupTable t("a", 50, 123.25, 1037.75);
  for (std::size_t n = 0; n < 50; ++n) {
    EXPECT_EQ(t.ceil_step(t.key_mib(n)), n);
    EXPECT_EQ(t.floor_step(t.key_mib(n)), n);
  }
}

TEST(BuildLut, Errors) {
  std::vector<CompressedModel> two{model(100, 1), model(500, 2)};
  EXPECT_EQ(kind_of([&] { build_lut(two, 1); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([&] { build_lut({model(100, 1), model(100, 2)}, 5); }), ErrorKind::kDegeneracy);
  EXPECT_EQ(kind_of([&] { build_lut({}, 5); }), ErrorKind::kEmptyInput);
  LookupTable t("a", 5, 100, 500);
  EXPECT_EQ(kind_of([&] { t.insert(1, {BitConfig::parse("F"), 1, 250}); }), ErrorKind::kValidation);
}

TEST(BuildLut, KeepsBestPerSectionAndFlushesLast) {
  const auto t = build_lut({model(100, 50, "I"), model(230, 80, "F"), model(260, 85, "FF"), model(500, 90, "FFF")}, 5);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.entries().at(0).peak_memory_mib, 100);
  EXPECT_EQ(t.entries().at(2).accuracy_pct, 85);
  EXPECT_EQ(t.entries().at(2).config.to_string(), "FF");
  EXPECT_EQ(t.entries().at(4).config.to_string(), "FFF");
  for (const auto& [step, e] : t.entries()) EXPECT_FALSE(e.config.levels().empty());
}

TEST(BuildLut, FirstModelWinsTies) {
  const auto t = build_lut({model(100, 50), model(210, 70, "F"), model(290, 70, "FF"), model(500, 90)}, 5);
  EXPECT_EQ(t.entries().at(2).config.to_string(), "F");
}

TEST(QueryLut, FloorKeyAndBoundaries) {
  const auto t = build_lut({model(100, 50), model(180, 60, "F"), model(230, 80, "FF"), model(500, 90, "FFF")}, 5);
  EXPECT_EQ(query_lut(t, 280).key_mib, 200);
  EXPECT_EQ(query_lut(t, 280).entry.config.to_string(), "F");
  EXPECT_EQ(query_lut(t, 500).key_mib, 500);
  EXPECT_EQ(query_lut(t, 500).entry.config.to_string(), "FFF");
  EXPECT_EQ(query_lut(t, 100).entry.peak_memory_mib, 100);
  EXPECT_EQ(kind_of([&] { query_lut(t, 99.9); }), ErrorKind::kNoFittingModel);
}

TEST(QueryLut, FallsBackToSmallerPopulatedKey) {
  const auto t = build_lut({model(100, 50), model(180, 60, "F"), model(500, 90, "FF")}, 5);
  const auto hit = query_lut(t, 450);
  EXPECT_EQ(hit.step, 1u);
  EXPECT_EQ(hit.entry.config.to_string(), "F");
}

TEST(QueryLut, NothingPopulatedBelow) {
  LookupTable t("a", 5, 100, 500);
  t.insert(3, {BitConfig::parse("F"), 1, 350});
  EXPECT_EQ(kind_of([&] { query_lut(t, 250); }), ErrorKind::kNoFittingModel);
}

TEST(LutProperties, SafeSmallAndMatchesSectionOracle) {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto family = build_family(testing::random_app(1 + seed * 2 % 199, 900 + seed));
    ASSERT_LE(family.size(), 200u);
    const auto t = build_lut(family, 50);
    EXPECT_LE(t.size(), 50u);
    EXPECT_EQ(build_lut(family, 50), t);
    for (const auto& [step, e] : t.entries()) EXPECT_LE(e.peak_memory_mib, t.key_mib(step));

    const double lo = t.min_mib(), hi = t.max_mib();
    std::uniform_real_distribution<double> grant_dist(lo, hi + 20.0);
    for (int q = 0; q < 50; ++q) {
      const double grant = q == 0 ? lo : (q == 1 ? hi : grant_dist(rng));
      const auto hit = query_lut(t, grant);
      EXPECT_LE(hit.entry.peak_memory_mib, grant);

      std::size_t step = floor_of(grant, lo, hi, 50);
      double best = -1.0;
      for (;;) {
        for (const auto& m : family) {
          if (section_of(m.peak_memory_mib, lo, hi, 50) == step) best = std::max(best, m.accuracy_pct);
        }
        if (best >= 0.0 || step == 0) break;
        --step;
      }
      EXPECT_EQ(hit.step, step);
      EXPECT_EQ(hit.entry.accuracy_pct, best);
    }
  }
}

TEST(LutDocument, RoundTripAndKeyFormat) {
  const auto t = build_lut(build_family(testing::random_app(40, 3)), 50, "rand3");
  const auto text = lut_to_json(t);
  EXPECT_EQ(lut_from_json(text), t);
  EXPECT_EQ(lut_to_json(lut_from_json(text)), text);
  const auto pos = text.find("\"key_mib\": ");
  ASSERT_NE(pos, std::string::npos);
  const auto value = text.substr(pos + 11, text.find_first_of(",\n", pos) - pos - 11);
  EXPECT_EQ(value.size() - value.find('.') - 1, 6u) << value;
}

}  // namespace
}  // namespace dynamix
