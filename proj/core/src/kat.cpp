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

#include "mscikdf/kat.hpp"

#include <algorithm>
#include <array>
#include <future>

#include <nlohmann/json.hpp>

#include "mscikdf/context.hpp"
#include "mscikdf/error.hpp"
#include "mscikdf/slots.hpp"

namespace mscikdf {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kFixedRootHex =
    "a573767a68b62299fdcd4db9c47a5b1181bb39fa2a06723cabbc04cbb6e97a95";
constexpr std::string_view kLongPassphrase =
    "0123456789abcdef0123456789abcdef0123456789abcdef0123456789abcdef";

constexpr std::array<std::string_view, 7> kKeys = {
    "root_hex",
    "passphrase_utf8",
    "hardening_profile",
    "context_text_form",
    "expected_state_fingerprint_hex",
    "expected_secret_hex",
    "expected_public_hex",
};

std::string trivial_context(std::string_view slot_name) {
  const SlotRegistry& reg = SlotRegistry::builtin();
  for (const SlotSpec& s : reg.slots()) {
    if (s.name == slot_name) {
      ContextDescriptor c;
      c.algorithm_id = s.algorithm_id;
      c.curve_id = s.curve_id;
      return format_context(c, reg);
    }
  }
  throw Error(ErrorCode::kParameter, "no builtin slot named " + std::string(slot_name));
}

bool is_lower_hex(std::string_view s) {
  return s.size() % 2 == 0 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

KatResult verify_one(std::size_t index, const KatRecord& rec, const KatVerifyOptions& options) {
  KatResult res;
  res.index = index;
  auto fail = [&](std::string_view field, std::string detail) {
    res.pass = false;
    res.field = std::string(field);
    res.detail = std::move(detail);
    return res;
  };

  std::optional<RootEntropy> root;
  try {
    if (!is_lower_hex(rec.root_hex)) return fail("root_hex", "not lowercase hex");
    root.emplace(from_hex(rec.root_hex));
  } catch (const Error& e) {
    return fail("root_hex", e.what());
  }

  std::optional<Passphrase> pass;
  try {
    pass.emplace(rec.passphrase_utf8);
  } catch (const Error& e) {
    return fail("passphrase_utf8", e.what());
  }

  HardeningParams params;
  try {
    const HardeningParams recorded = HardeningParams::from_profile(rec.hardening_profile);
    params = options.profile_override.value_or(recorded);
  } catch (const Error& e) {
    return fail("hardening_profile", e.what());
  }

  ContextDescriptor ctx;
  try {
    ctx = parse_context(rec.context_text_form);
    if (format_context(ctx) != rec.context_text_form) {
      return fail("context_text_form", "not in canonical text form");
    }
  } catch (const Error& e) {
    return fail("context_text_form", e.what());
  }

  try {
    const UsageState state = derive_usage_state(*root, *pass, params);
    if (fingerprint_hex(state.fingerprint()) != rec.expected_state_fingerprint_hex) {
      return fail("expected_state_fingerprint_hex", "fingerprint mismatch");
    }
    const KeyPairOut key = derive_key(state, ctx);
    if (to_hex(key.secret) != rec.expected_secret_hex) {
      return fail("expected_secret_hex", "secret mismatch");
    }
    if (rec.expected_public_hex) {
      if (!key.public_key) return fail("expected_public_hex", "slot has no public key");
      if (to_hex(*key.public_key) != *rec.expected_public_hex) {
        return fail("expected_public_hex", "public key mismatch");
      }
    }
  } catch (const Error& e) {
    return fail("hardening_profile", std::string("pipeline error: ") + e.what());
  }
  res.pass = true;
  return res;
}

}  // namespace

KatSuite parse_kat_suite(std::string_view name) {
  if (name == "core") return KatSuite::kCore;
  if (name == "slots") return KatSuite::kSlots;
  if (name == "rotation") return KatSuite::kRotation;
  throw Error(ErrorCode::kParameter,
              "unknown suite '" + std::string(name) + "' (expected core, slots or rotation)");
}

std::string_view kat_suite_name(KatSuite suite) noexcept {
  switch (suite) {
    case KatSuite::kCore: return "core";
    case KatSuite::kSlots: return "slots";
    case KatSuite::kRotation: return "rotation";
  }
  return "";
}

KatRecord kat_compute(std::string_view root_hex, std::string_view passphrase,
                      std::string_view hardening_profile, std::string_view context_text,
                      bool include_public) {
  const RootEntropy root(from_hex(root_hex));
  const Passphrase pass(passphrase);
  const HardeningParams params = HardeningParams::from_profile(hardening_profile);
  const ContextDescriptor ctx = parse_context(context_text);

  const UsageState state = derive_usage_state(root, pass, params);
  const KeyPairOut key = derive_key(state, ctx);

  KatRecord rec;
  rec.root_hex = to_hex(from_hex(root_hex));
  rec.passphrase_utf8 = std::string(passphrase);
  rec.hardening_profile = params.profile();
  rec.context_text_form = format_context(ctx);
  rec.expected_state_fingerprint_hex = fingerprint_hex(state.fingerprint());
  rec.expected_secret_hex = to_hex(key.secret);
  if (include_public && key.public_key) rec.expected_public_hex = to_hex(*key.public_key);
  return rec;
}

std::vector<KatRecord> kat_generate(KatSuite suite) {
  const std::string profile = HardeningParams::test_vectors().profile();
  std::vector<KatRecord> out;
  switch (suite) {
    case KatSuite::kCore: {
      const std::array<std::string, 3> roots = {std::string(32, '0'), std::string(64, '0'),
                                                std::string(kFixedRootHex)};
      const std::array<std::string_view, 3> passes = {"", "pw", kLongPassphrase};
      const std::array<std::string, 2> contexts = {trivial_context("ed25519"),
                                                   trivial_context("secp256k1")};
      for (const auto& r : roots) {
        for (const auto p : passes) {
          for (const auto& c : contexts) out.push_back(kat_compute(r, p, profile, c));
        }
      }
      break;
    }
    case KatSuite::kSlots:
      for (const SlotSpec& s : SlotRegistry::builtin().slots()) {
        out.push_back(kat_compute(kFixedRootHex, "pw", profile, trivial_context(s.name)));
      }
      break;
    case KatSuite::kRotation:
      for (const std::string_view p : {"rotation-1", "rotation-2", "rotation-3"}) {
        out.push_back(kat_compute(kFixedRootHex, p, profile, trivial_context("ed25519"),
                                  /*include_public=*/false));
      }
      break;
  }
  return out;
}

std::string kat_serialize(const KatRecord& r) {
  ordered_json j;
  j["root_hex"] = r.root_hex;
  j["passphrase_utf8"] = r.passphrase_utf8;
  j["hardening_profile"] = r.hardening_profile;
  j["context_text_form"] = r.context_text_form;
  j["expected_state_fingerprint_hex"] = r.expected_state_fingerprint_hex;
  j["expected_secret_hex"] = r.expected_secret_hex;
  if (r.expected_public_hex) j["expected_public_hex"] = *r.expected_public_hex;
  return j.dump() + "\n";
}

std::string kat_serialize(std::span<const KatRecord> records) {
  std::string out;
  for (const KatRecord& r : records) out += kat_serialize(r);
  return out;
}

std::vector<KatRecord> kat_parse(std::string_view text) {
  std::vector<KatRecord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;

    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw RecordParseError(line_no, "line " + std::to_string(line_no) + ": invalid JSON");
    }
    if (!j.is_object()) {
      throw RecordParseError(line_no, "line " + std::to_string(line_no) + ": not a JSON object");
    }
    for (const auto& item : j.items()) {
      if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
        throw RecordParseError(line_no, "line " + std::to_string(line_no) + ": unknown key '" +
                                            item.key() + "'");
      }
      if (!item.value().is_string()) {
        throw RecordParseError(line_no, "line " + std::to_string(line_no) + ": key '" +
                                            item.key() + "' must be a string");
      }
    }
    auto field = [&](std::string_view key) -> std::string {
      const auto it = j.find(std::string(key));
      if (it == j.end()) {
        throw RecordParseError(line_no, "line " + std::to_string(line_no) + ": missing key '" +
                                            std::string(key) + "'");
      }
      return it->get<std::string>();
    };
    KatRecord r;
    r.root_hex = field("root_hex");
    r.passphrase_utf8 = field("passphrase_utf8");
    r.hardening_profile = field("hardening_profile");
    r.context_text_form = field("context_text_form");
    r.expected_state_fingerprint_hex = field("expected_state_fingerprint_hex");
    r.expected_secret_hex = field("expected_secret_hex");
    if (j.contains("expected_public_hex")) r.expected_public_hex = field("expected_public_hex");
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t KatReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const KatResult& r) { return !r.pass; }));
}

KatReport kat_verify(std::span<const KatRecord> records, const KatVerifyOptions& options) {
  KatReport report;
  if (options.profile_override) report.profile_override = options.profile_override->profile();
  report.results.resize(records.size());

  const std::size_t workers =
      std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(records.size(), 1));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < records.size(); i += workers) {
        report.results[i] = verify_one(i, records[i], options);
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return report;
}

}  // namespace mscikdf
