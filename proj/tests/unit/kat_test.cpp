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

#include "mscikdf/error.hpp"
#include "mscikdf/kat.hpp"
#include "test_util.hpp"

namespace mscikdf {
namespace {

std::string vector_file(std::string_view name) {
  return testing::read_file(testing::source_path("vectors/" + std::string(name)));
}

TEST(KatGenerate, ReproducesCommittedFilesByteForByte) {
  EXPECT_EQ(kat_serialize(kat_generate(KatSuite::kCore)), vector_file("core-v1.jsonl"));
  EXPECT_EQ(kat_serialize(kat_generate(KatSuite::kSlots)), vector_file("slots-v1.jsonl"));
  EXPECT_EQ(kat_serialize(kat_generate(KatSuite::kRotation)), vector_file("rotation-v1.jsonl"));
}

TEST(KatGenerate, SuiteSizesAndProfile) {
  EXPECT_EQ(kat_generate(KatSuite::kCore).size(), 18u);
  EXPECT_EQ(kat_generate(KatSuite::kSlots).size(), 6u);
  EXPECT_EQ(kat_generate(KatSuite::kRotation).size(), 3u);
  for (const KatRecord& r : kat_generate(KatSuite::kCore)) {
    EXPECT_EQ(r.hardening_profile, "test-vectors");
  }
}

TEST(KatSuiteName, ParsesKnownNames) {
  for (const KatSuite s : {KatSuite::kCore, KatSuite::kSlots, KatSuite::kRotation}) {
    EXPECT_EQ(parse_kat_suite(kat_suite_name(s)), s);
  }
  try {
    parse_kat_suite("everything");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameter);
  }
}

TEST(KatVerify, CommittedSuitesPass) {
  for (const char* f : {"core-v1.jsonl", "slots-v1.jsonl", "rotation-v1.jsonl"}) {
    const auto records = kat_parse(vector_file(f));
    const KatReport report = kat_verify(records, {.workers = 3});
    EXPECT_TRUE(report.all_passed()) << f;
    EXPECT_EQ(report.results.size(), records.size());
    EXPECT_FALSE(report.profile_override);
  }
}

TEST(KatVerify, SlowDefaultProfileRecordPasses) {
  const auto records = kat_parse(vector_file("slow/default-profile-v1.jsonl"));
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].hardening_profile, "default");
  EXPECT_EQ(records[0].expected_state_fingerprint_hex, testing::frozen::kFingerprintDefault);
  EXPECT_TRUE(kat_verify(records).all_passed());
}

TEST(KatVerify, TamperedFieldsAreNamed) {
  const auto base = kat_generate(KatSuite::kCore);
  struct Case {
    std::string field;
    void (*mutate)(KatRecord&);
  };
  const Case cases[] = {
      {"root_hex", [](KatRecord& r) { r.root_hex[0] = 'X'; }},
      {"root_hex", [](KatRecord& r) { r.root_hex = std::string(r.root_hex.size(), 'A'); }},
      {"root_hex", [](KatRecord& r) { r.root_hex += "00"; }},
      {"passphrase_utf8", [](KatRecord& r) { r.passphrase_utf8 = std::string(1025, 'p'); }},
      {"hardening_profile", [](KatRecord& r) { r.hardening_profile = "turbo"; }},
      {"context_text_form", [](KatRecord& r) { r.context_text_form += "/"; }},
      {"context_text_form",
       [](KatRecord& r) { r.context_text_form = "mscikdf:v1/0x0001/ed25519//0"; }},
      {"expected_state_fingerprint_hex",
       [](KatRecord& r) { r.expected_state_fingerprint_hex = "0000000000000000"; }},
      {"expected_state_fingerprint_hex", [](KatRecord& r) { r.passphrase_utf8 += "!"; }},
      {"expected_secret_hex", [](KatRecord& r) { r.expected_secret_hex[5] ^= 1; }},
      {"expected_public_hex", [](KatRecord& r) { (*r.expected_public_hex)[0] ^= 1; }},
  };
  for (const Case& c : cases) {
    std::vector<KatRecord> records = base;
    c.mutate(records[4]);
    const KatReport report = kat_verify(records);
    ASSERT_EQ(report.failures(), 1u) << c.field;
    EXPECT_FALSE(report.results[4].pass);
    EXPECT_EQ(report.results[4].index, 4u);
    EXPECT_EQ(report.results[4].field, c.field);
  }
}

TEST(KatVerify, ProfileOverrideIsReportedAndApplied) {
  const auto records = kat_generate(KatSuite::kSlots);
  mscikdf::KatVerifyOptions opts;
  opts.profile_override = HardeningParams{8, 2, 1};
  const KatReport report = kat_verify(records, opts);
  ASSERT_TRUE(report.profile_override);
  EXPECT_EQ(*report.profile_override, "custom:m=8,t=2,p=1");
  EXPECT_EQ(report.failures(), records.size());
  EXPECT_EQ(report.results[0].field, "expected_state_fingerprint_hex");

  opts.profile_override = HardeningParams::test_vectors();
  EXPECT_TRUE(kat_verify(records, opts).all_passed());
}

TEST(KatVerify, PublicKeyOnSlotWithoutOneFails) {
  auto records = kat_generate(KatSuite::kSlots);
  for (KatRecord& r : records) {
    if (!r.expected_public_hex) {
      r.expected_public_hex = "00";
      const KatReport report = kat_verify(std::span(&r, 1));
      EXPECT_EQ(report.results[0].field, "expected_public_hex");
      return;
    }
  }
  FAIL() << "no slot without a public key";
}

TEST(KatParse, RoundTripsSerialize) {
  const auto records = kat_generate(KatSuite::kRotation);
  EXPECT_EQ(kat_parse(kat_serialize(records)), records);
  EXPECT_FALSE(records[0].expected_public_hex);
  EXPECT_EQ(kat_serialize(records[0]).back(), '\n');
}

TEST(KatParse, ReportsLineNumbers) {
  const std::string good = kat_serialize(kat_generate(KatSuite::kSlots)[0]);
  struct Case {
    std::string text;
    std::size_t line;
  };
  std::string missing = good;
  missing.replace(missing.find("\"root_hex\""), 10, "\"rootx_hex\"");
  const Case cases[] = {
      {good + "{not json\n", 2},
      {good + good + "[1,2]\n", 3},
      {"{\"root_hex\":\"00\"}\n", 1},
      {good + missing, 2},
      {std::string(good).insert(1, "\"extra\":\"x\","), 1},
      {std::string(good).replace(good.find("\"passphrase_utf8\":\"pw\""), 22,
                                 "\"passphrase_utf8\":7"),
       1},
  };
  for (const Case& c : cases) {
    try {
      kat_parse(c.text);
      FAIL() << c.text;
    } catch (const RecordParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  }
}

TEST(KatParse, SkipsBlankLines) {
  const std::string good = kat_serialize(kat_generate(KatSuite::kSlots)[0]);
  EXPECT_EQ(kat_parse("\n" + good + "\n\n" + good).size(), 2u);
  EXPECT_TRUE(kat_parse("").empty());
}

TEST(KatCompute, MatchesGeneratedRecord) {
  const KatRecord r = kat_generate(KatSuite::kCore)[0];
  EXPECT_EQ(kat_compute(r.root_hex, r.passphrase_utf8, r.hardening_profile, r.context_text_form),
            r);
}

}  // namespace
}  // namespace mscikdf
