// Copyright 2026 The mscikdf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "mscikdf/error.hpp"
#include "mscikdf/harness.hpp"
#include "stats.hpp"

namespace mscikdf {
namespace {

const HarnessConfig kFast = HarnessConfig::fast();

ErrorCode precondition(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted";
  return ErrorCode::kIo;
}

const Check* find_check(const IsolationReport& r, std::string_view name) {
  for (const Check& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TEST(Stats, ChiSquareAndNormalReferenceValues) {
  EXPECT_NEAR(stats::chi2_sf(3.841458820694124, 1), 0.05, 1e-9);
  EXPECT_NEAR(stats::chi2_sf(23.209251158954356, 10), 0.01, 1e-9);
  EXPECT_DOUBLE_EQ(stats::chi2_sf(0.0, 5), 1.0);
  EXPECT_NEAR(stats::normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(Stats, PearsonAndCritical) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {2, 4, 6, 8, 10};
  const std::vector<double> z = {5, 4, 3, 2, 1};
  EXPECT_NEAR(stats::pearson(x, y), 1.0, 1e-12);
  EXPECT_NEAR(stats::pearson(x, z), -1.0, 1e-12);
  EXPECT_DOUBLE_EQ(stats::pearson(x, std::vector<double>(5, 3.0)), 0.0);
  // Fisher z: tanh(1.959964 / sqrt(997)) for n = 1000, alpha = 0.05.
  EXPECT_NEAR(stats::correlation_critical(1000, 0.05), 0.06194, 1e-4);
}

TEST(Stats, BitHelpers) {
  const Bytes a = {0x80, 0x01};
  EXPECT_TRUE(stats::bit(a, 0));
  EXPECT_FALSE(stats::bit(a, 1));
  EXPECT_TRUE(stats::bit(a, 15));
  EXPECT_EQ(stats::hamming(a, Bytes{0x00, 0x00}), 2u);
  EXPECT_EQ(stats::common_prefix(a, Bytes{0x80, 0x02}), 1u);
  stats::BitBalance bb(16);
  for (int i = 0; i < 100; ++i) bb.add(i % 2 ? a : Bytes{0x7f, 0xfe});
  EXPECT_DOUBLE_EQ(bb.chi2(), 0.0);
}

TEST(Dimensions, NamesRoundTrip) {
  ASSERT_EQ(all_dimensions().size(), 6u);
  for (const Dimension d : all_dimensions()) EXPECT_EQ(parse_dimension(dimension_name(d)), d);
  EXPECT_EQ(precondition([] { parse_dimension("colour"); }), ErrorCode::kPrecondition);
}

TEST(HarnessConfig, CorrectedAlpha) {
  const HarnessConfig c = HarnessConfig::standard();
  EXPECT_DOUBLE_EQ(c.corrected_alpha(1), 0.01 / 11);
  EXPECT_DOUBLE_EQ(c.corrected_alpha(4), 0.01 / 44);
  EXPECT_TRUE(HarnessConfig::fast().smoke);
  EXPECT_FALSE(c.smoke);
}

TEST(Avalanche, ReferencePassesEveryDimension) {
  for (const Dimension d : all_dimensions()) {
    const IsolationReport r = avalanche_test(reference_engine(), d, 200, kFast);
    EXPECT_TRUE(r.pass) << r.test_name;
    EXPECT_EQ(r.samples, 200u);
    const Check* mean = find_check(r, "mean-hamming-fraction");
    ASSERT_NE(mean, nullptr);
    EXPECT_NEAR(mean->statistic, 0.5, 0.05);
  }
}

TEST(Avalanche, Preconditions) {
  EXPECT_EQ(precondition([] { avalanche_test(reference_engine(), Dimension::kIndex, 99, kFast); }),
            ErrorCode::kPrecondition);
  const Perturbation identity = [](const ContextDescriptor& c, std::mt19937_64&) { return c; };
  EXPECT_EQ(precondition([&] {
              avalanche_test(reference_engine(), Dimension::kIndex, 100, kFast, identity);
            }),
            ErrorCode::kPrecondition);
}

TEST(Avalanche, CustomPerturbationIsUsed) {
  // Flipping only the top index bit is still a full avalanche.
  const Perturbation top_bit = [](const ContextDescriptor& c, std::mt19937_64&) {
    ContextDescriptor m = c;
    m.index ^= 0x80000000u;
    return m;
  };
  EXPECT_TRUE(avalanche_test(reference_engine(), Dimension::kIndex, 100, kFast, top_bit).pass);
}

TEST(Avalanche, OmitAlgorithmFixtureFailsSlotDimensions) {
  for (const Dimension d : {Dimension::kAlgorithm, Dimension::kCurve}) {
    const IsolationReport r = avalanche_test(fixtures::omit_algorithm_engine(), d, 100, kFast);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(find_check(r, "identical-outputs")->statistic, 100.0);
  }
  EXPECT_TRUE(
      avalanche_test(fixtures::omit_algorithm_engine(), Dimension::kPurpose, 100, kFast).pass);
}

TEST(CrossCurve, ReferencePassesAndFixtureFails) {
  EXPECT_TRUE(cross_curve_correlation_test(reference_engine(), 100, SlotRegistry::builtin(), kFast)
                  .pass);
  const IsolationReport bad = cross_curve_correlation_test(fixtures::omit_algorithm_engine(), 100,
                                                           SlotRegistry::builtin(), kFast);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(find_check(bad, "common-prefix-links")->statistic, 0.0);
}

TEST(CrossCurve, SingleSlotIsNotApplicable) {
  const SlotRegistry one({registry_builtin()[0]});
  const IsolationReport r = cross_curve_correlation_test(reference_engine(), 100, one, kFast);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.pass);
}

TEST(Rotation, ReferencePasses) {
  const IsolationReport r = rotation_unlinkability_test(reference_engine(), 3, 100, kFast);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(find_check(r, "coexistence-mismatches")->statistic, 0.0);
  EXPECT_EQ(find_check(r, "fingerprint-collisions")->statistic, 0.0);
}

TEST(Rotation, Preconditions) {
  EXPECT_EQ(precondition([] { rotation_unlinkability_test(reference_engine(), 1, 100, kFast); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(precondition([] { rotation_unlinkability_test(reference_engine(), 2, 50, kFast); }),
            ErrorCode::kPrecondition);
}

TEST(Substitution, ReferencePassesAndConstantSaltFails) {
  HarnessConfig c = kFast;
  c.substitution_trials = 50;
  const IsolationReport good = mnemonic_substitution_test(reference_engine(), c);
  EXPECT_TRUE(good.pass);
  EXPECT_EQ(find_check(good, "checksum-variants-detected-fraction")->statistic, 1.0);
  const IsolationReport bad = mnemonic_substitution_test(fixtures::constant_salt_engine(), c);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(find_check(bad, "state-collisions")->statistic, 50.0);
}

TEST(NextBit, ReferenceStaysAtChanceAndFixtureIsPredictable) {
  EXPECT_TRUE(next_bit_prediction_test(reference_engine(), 200, kFast).pass);
  const IsolationReport bad =
      next_bit_prediction_test(fixtures::omit_algorithm_engine(), 200, kFast);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(find_check(bad, "max-accuracy/algorithm")->statistic, 0.75);
}

TEST(StateIndependence, ReferencePasses) {
  EXPECT_TRUE(state_independence_test(reference_engine(), 200, kFast).pass);
  EXPECT_EQ(precondition([] { state_independence_test(reference_engine(), 199, kFast); }),
            ErrorCode::kPrecondition);
}

TEST(Suite, FastReferenceRunPassesAndSerializes) {
  const SuiteReport s = run_suite(reference_engine(), kFast);
  EXPECT_TRUE(s.pass()) << s.to_table();
  EXPECT_EQ(s.reports.size(), 11u);
  EXPECT_TRUE(s.smoke);
  const auto j = nlohmann::json::parse(s.to_json());
  EXPECT_EQ(j["engine"], "reference");
  EXPECT_EQ(j["tests"].size(), 11u);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_NE(s.to_table().find("smoke-level"), std::string::npos);
}

TEST(Suite, DeterministicForFixedSeed) {
  const IsolationReport a = avalanche_test(reference_engine(), Dimension::kPurpose, 100, kFast);
  const IsolationReport b = avalanche_test(reference_engine(), Dimension::kPurpose, 100, kFast);
  EXPECT_EQ(a.statistic, b.statistic);
  HarnessConfig other = kFast;
  other.seed ^= 1;
  EXPECT_NE(avalanche_test(reference_engine(), Dimension::kPurpose, 100, other).statistic,
            a.statistic);
}

TEST(Suite, NegativeControlsFail) {
  EXPECT_FALSE(run_suite(fixtures::omit_algorithm_engine(), kFast).pass());
  EXPECT_FALSE(run_suite(fixtures::constant_salt_engine(), kFast).pass());
  EXPECT_EQ(fixtures::by_name("omit-algorithm"), &fixtures::omit_algorithm_engine());
  EXPECT_EQ(fixtures::by_name("constant-salt"), &fixtures::constant_salt_engine());
  EXPECT_EQ(fixtures::by_name("reference"), nullptr);
}

}  // namespace
}  // namespace mscikdf
