#include "dynamix/family.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace dynamix {
namespace {

AppSpec three_layer_app() {
  AppSpec app;
  app.name = "tiny";
  app.base_memory_mib = 10.0;
  app.fp_accuracy_pct = 90.0;
  app.accuracy_decay_per_nat = 0.5;
  app.restore_ms = 1.0;
  const double sens[3] = {5.0, 1.0, 3.0};
  for (std::size_t i = 0; i < 3; ++i) {
    LayerSpec l;
    l.index = i;
    l.op_kind = "conv";
    l.param_count = 1 << 20;
    l.int_bytes = 1 << 20;
    l.fp_bytes = 4u << 20;
    l.int_latency_ms = 1.0;
    l.fp_latency_ms = 2.0 + static_cast<double>(i);
    l.load_fp_ms = 0.25;
    l.sensitivity = sens[i];
    app.layers.push_back(l);
  }
  return app;
}

TEST(EvaluateConfig, AllFpHasFullAccuracy) {
  const AppSpec app = three_layer_app();
  const auto m = evaluate_config(app, BitConfig::parse("FFF"));
  EXPECT_EQ(m.sensitivity_sum, 0.0);
  EXPECT_EQ(m.accuracy_pct, 90.0);
  EXPECT_EQ(m.fp_layer_count, 3u);
  EXPECT_DOUBLE_EQ(m.peak_memory_mib, 10.0 + 9.0);
}

TEST(EvaluateConfig, AllIntIsBaseModel) {
  const AppSpec app = three_layer_app();
  const auto m = evaluate_config(app, BitConfig::parse("III"));
  EXPECT_EQ(m.peak_memory_mib, app.base_memory_mib);
  const auto cost = execution_cost(app, BitConfig::parse("III"));
  EXPECT_EQ(cost.reconfig_ms, 0.0);
  EXPECT_DOUBLE_EQ(m.wcet_ms, 3.0 + 1.0);
}

TEST(EvaluateConfig, DecayMapHandValue) {
  const auto m = evaluate_config(three_layer_app(), BitConfig::parse("FII"));
  EXPECT_DOUBLE_EQ(m.accuracy_pct, 88.0);
  EXPECT_DOUBLE_EQ(m.sensitivity_sum, 4.0);
  EXPECT_DOUBLE_EQ(m.wcet_ms, 0.25 + 2.0 + 1.0 + 1.0 + 1.0);
}

TEST(EvaluateConfig, LengthMismatchIsDimensionError) {
  try {
    evaluate_config(three_layer_app(), BitConfig::parse("FI"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
  }
}

TEST(EvaluateConfig, AccuracyClampedAtZero) {
  AppSpec app = three_layer_app();
  app.accuracy_decay_per_nat = 100.0;
  EXPECT_EQ(evaluate_config(app, BitConfig::parse("III")).accuracy_pct, 0.0);
}

TEST(BitConfigText, ParseAndPrint) {
  EXPECT_EQ(BitConfig::parse("FIIF").to_string(), "FIIF");
  EXPECT_EQ(BitConfig::parse("FIIF").fp_count(), 2u);
  EXPECT_THROW(BitConfig::parse("FX"), Error);
}

TEST(BuildFamily, SensitivityOrder) {
  const auto family = build_family(three_layer_app());
  ASSERT_EQ(family.size(), 4u);
  EXPECT_EQ(family[0].config.to_string(), "III");
  EXPECT_EQ(family[1].config.to_string(), "FII");
  EXPECT_EQ(family[2].config.to_string(), "FIF");
  EXPECT_EQ(family[3].config.to_string(), "FFF");
}

TEST(BuildFamily, SingleLayer) {
  const auto family = build_family(testing::random_app(1, 4));
  ASSERT_EQ(family.size(), 2u);
  EXPECT_EQ(family[0].config.to_string(), "I");
  EXPECT_EQ(family[1].config.to_string(), "F");
}

TEST(BuildFamily, TiesGoToLowerIndex) {
  AppSpec app = three_layer_app();
  for (auto& l : app.layers) l.sensitivity = 2.0;
  const auto family = build_family(app);
  EXPECT_EQ(family[1].config.to_string(), "FII");
  EXPECT_EQ(family[2].config.to_string(), "FFI");
}

TEST(BuildFamily, MatchesBruteForceForTwelveLayers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AppSpec app = testing::random_app(12, 100 + seed);
    const auto best = testing::brute_force_min_sensitivity(app);
    const auto family = build_family(app);
    ASSERT_EQ(family.size(), 13u);
    for (std::size_t k = 0; k < family.size(); ++k) {
      EXPECT_EQ(family[k].fp_layer_count, k);
      EXPECT_NEAR(family[k].sensitivity_sum, best[k], 1e-12);
    }
  }
}

TEST(BuildFamily, MonotoneAlongOrder) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AppSpec app = testing::random_app(5 + seed * 2, seed);
    const auto family = build_family(app);
    for (std::size_t k = 1; k < family.size(); ++k) {
      EXPECT_GE(family[k].peak_memory_mib, family[k - 1].peak_memory_mib);
      EXPECT_LE(family[k].sensitivity_sum, family[k - 1].sensitivity_sum + 1e-12);
      EXPECT_GE(family[k].accuracy_pct, family[k - 1].accuracy_pct - 1e-12);
    }
    for (const auto& m : family) {
      EXPECT_EQ(m.peak_memory_mib, testing::peak_memory_direct(app, m.config));
      EXPECT_GE(m.peak_memory_mib, app.base_memory_mib);
    }
  }
}

TEST(FamilyCsv, HeaderAndRows) {
  const auto csv = family_to_csv(build_family(three_layer_app()));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "fp_layer_count,peak_memory_mib,wcet_ms,accuracy_pct,sensitivity_sum,config");
  EXPECT_NE(csv.find(",FIF\n"), std::string::npos);
}

}  // namespace
}  // namespace dynamix
