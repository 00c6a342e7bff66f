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

// Known-answer vectors.
//
// File format: one compact JSON object per line, UTF-8, LF-terminated, keys in
// this order:
//
//   root_hex, passphrase_utf8, hardening_profile, context_text_form,
//   expected_state_fingerprint_hex, expected_secret_hex,
//   expected_public_hex (omitted when absent)
//
// Files are named vectors/<suite>-v1.jsonl.

#ifndef MSCIKDF_KAT_HPP
#define MSCIKDF_KAT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscikdf/usage_state.hpp"

namespace mscikdf {

struct KatRecord {
  std::string root_hex;
  std::string passphrase_utf8;
  std::string hardening_profile;
  std::string context_text_form;
  std::string expected_state_fingerprint_hex;
  std::string expected_secret_hex;
  std::optional<std::string> expected_public_hex;

  friend bool operator==(const KatRecord&, const KatRecord&) = default;
};

enum class KatSuite { kCore, kSlots, kRotation };

/// "core", "slots", "rotation"; anything else is Error(kParameter).
KatSuite parse_kat_suite(std::string_view name);
std::string_view kat_suite_name(KatSuite suite) noexcept;

/// Deterministic; every record uses the test-vectors hardening profile.
std::vector<KatRecord> kat_generate(KatSuite suite);

/// Computes a record for the given inputs (used by kat_generate and tools).
KatRecord kat_compute(std::string_view root_hex, std::string_view passphrase,
                      std::string_view hardening_profile, std::string_view context_text,
                      bool include_public = true);

std::string kat_serialize(const KatRecord& record);
std::string kat_serialize(std::span<const KatRecord> records);

/// Throws RecordParseError naming the 1-based line.
std::vector<KatRecord> kat_parse(std::string_view text);

struct KatResult {
  std::size_t index = 0;
  bool pass = false;
  /// First mismatching or invalid field (a KatRecord key name).
  std::string field;
  std::string detail;
};

struct KatReport {
  std::vector<KatResult> results;
  std::optional<std::string> profile_override;

  std::size_t failures() const noexcept;
  bool all_passed() const noexcept { return failures() == 0; }
};

struct KatVerifyOptions {
  /// Explicit override, reported in the KatReport. Without it each record is
  /// verified under its own profile.
  std::optional<HardeningParams> profile_override;
  /// Records are fanned out across this many threads; results keep input
  /// order.
  unsigned workers = 1;
};

KatReport kat_verify(std::span<const KatRecord> records, const KatVerifyOptions& options = {});

}  // namespace mscikdf

#endif  // MSCIKDF_KAT_HPP
