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

#include "mscikdf/usage_state.hpp"

#include <charconv>

#include "access.hpp"
#include "mscikdf/error.hpp"
#include "primitives.hpp"

namespace mscikdf {

namespace {

constexpr std::size_t kHardenedSize = 32;
constexpr std::size_t kArgonSaltSize = 16;

std::uint32_t parse_u32(std::string_view text, std::string_view what) {
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kParse, "invalid " + std::string(what) + " in hardening profile");
  }
  return v;
}

Fingerprint compute_fingerprint(ByteView prk) {
  const SecretBytes fp = primitives::hkdf_expand_sha512(prk, {as_bytes(kFingerprintLabel)},
                                                        Fingerprint{}.size());
  Fingerprint out{};
  std::copy(fp.begin(), fp.end(), out.begin());
  return out;
}

}  // namespace

Passphrase::Passphrase(std::string_view utf8) : Passphrase(as_bytes(utf8)) {}

Passphrase::Passphrase(ByteView bytes) {
  if (bytes.size() > kMaxSize) {
    throw Error(ErrorCode::kParameter, "passphrase exceeds 1024 bytes");
  }
  bytes_.assign(bytes.begin(), bytes.end());
}

HardeningParams HardeningParams::from_profile(std::string_view profile) {
  if (profile == "default") return defaults();
  if (profile == "test-vectors") return test_vectors();
  constexpr std::string_view kCustom = "custom:";
  if (!profile.starts_with(kCustom)) {
    throw Error(ErrorCode::kParse, "unknown hardening profile '" + std::string(profile) + "'");
  }
  std::string_view rest = profile.substr(kCustom.size());
  HardeningParams p{0, 0, 0};
  bool seen_m = false, seen_t = false, seen_p = false;
  while (!rest.empty()) {
    const std::size_t comma = std::min(rest.find(','), rest.size());
    const std::string_view item = rest.substr(0, comma);
    rest = comma == rest.size() ? std::string_view{} : rest.substr(comma + 1);
    if (item.size() < 3 || item[1] != '=') {
      throw Error(ErrorCode::kParse, "malformed hardening profile item");
    }
    const std::string_view value = item.substr(2);
    switch (item[0]) {
      case 'm': p.memory_mib = parse_u32(value, "memory"); seen_m = true; break;
      case 't': p.iterations = parse_u32(value, "iterations"); seen_t = true; break;
      case 'p': p.parallelism = parse_u32(value, "parallelism"); seen_p = true; break;
      default: throw Error(ErrorCode::kParse, "unknown hardening profile key");
    }
  }
  if (!seen_m || !seen_t || !seen_p) {
    throw Error(ErrorCode::kParse, "custom hardening profile needs m=, t= and p=");
  }
  p.validate();
  return p;
}

std::string HardeningParams::profile() const {
  if (*this == defaults()) return "default";
  if (*this == test_vectors()) return "test-vectors";
  return "custom:m=" + std::to_string(memory_mib) + ",t=" + std::to_string(iterations) +
         ",p=" + std::to_string(parallelism);
}

void HardeningParams::validate() const {
  if (memory_mib < kMinMemoryMib || memory_mib > kMaxMemoryMib) {
    throw Error(ErrorCode::kParameter, "hardening memory must be between 8 MiB and 1 TiB");
  }
  if (iterations < kMinIterations) {
    throw Error(ErrorCode::kParameter, "hardening iterations must be at least 1");
  }
  if (parallelism != 1) {
    throw Error(ErrorCode::kParameter, "only parallelism = 1 is supported");
  }
}

bool operator==(const UsageState& a, const UsageState& b) noexcept {
  return equal_ct(a.state_root_, b.state_root_);
}

UsageState detail::UsageStateAccess::make(SecretBytes state_root) {
  const Fingerprint fp = compute_fingerprint(state_root);
  return UsageState(std::move(state_root), fp);
}

UsageState derive_usage_state(const RootEntropy& root, const Passphrase& pass,
                              const HardeningParams& params) {
  params.validate();
  const ByteView r = detail::RootAccess::bytes(root);

  const auto digest = primitives::sha256({as_bytes(kPwSaltLabel), r});
  const ByteView salt(digest.data(), kArgonSaltSize);

  SecretBytes hardened = primitives::argon2id(detail::PassphraseAccess::bytes(pass), salt,
                                              {params.memory_mib * 1024u, params.iterations},
                                              kHardenedSize);
  SecretBytes state_root = primitives::hkdf_extract_sha512(as_bytes(kExtractSalt), {r, hardened});
  return detail::UsageStateAccess::make(std::move(state_root));
}

Fingerprint usage_fingerprint(const UsageState& state) noexcept { return state.fingerprint(); }

std::string fingerprint_hex(const Fingerprint& fp) { return to_hex(fp); }

}  // namespace mscikdf
