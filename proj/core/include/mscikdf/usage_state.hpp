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

// Passphrase-bound usage states.
//
//   salt       = SHA-256("MSCIKDF/v1/pw-salt" || R)[0..16)
//   T          = Argon2id(P, salt, m, t, p = 1, 32)
//   state_root = HKDF-SHA-512-Extract("MSCIKDF/v1/extract", R || T)
//   prk        = state_root
//   fp         = HKDF-SHA-512-Expand(prk, "MSCIKDF/v1/fingerprint", 8)
//
// A usage state is a pure function of (R, P, params). There is no counter,
// history, or wrapper: rotating to a new passphrase simply yields another
// state, and every earlier (mnemonic, passphrase) pair keeps reproducing its
// own state. The root is read, never returned or modified.

#ifndef MSCIKDF_USAGE_STATE_HPP
#define MSCIKDF_USAGE_STATE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "mscikdf/bytes.hpp"
#include "mscikdf/mnemonic.hpp"

namespace mscikdf {

namespace detail {
struct PassphraseAccess;
struct UsageStateAccess;
}  // namespace detail

inline constexpr std::string_view kPwSaltLabel = "MSCIKDF/v1/pw-salt";
inline constexpr std::string_view kExtractSalt = "MSCIKDF/v1/extract";
inline constexpr std::string_view kFingerprintLabel = "MSCIKDF/v1/fingerprint";

/// User-supplied, mutable secret. At most 1024 bytes; the empty passphrase is
/// legal. Storage is wiped on destruction.
class Passphrase {
 public:
  static constexpr std::size_t kMaxSize = 1024;

  /// Throws Error(kParameter) if longer than kMaxSize.
  explicit Passphrase(std::string_view utf8);
  explicit Passphrase(ByteView bytes);

  std::size_t size() const noexcept { return bytes_.size(); }
  bool empty() const noexcept { return bytes_.empty(); }

 private:
  friend struct detail::PassphraseAccess;
  SecretBytes bytes_;
};

/// Argon2id cost. The floor is 8 MiB / 1 iteration; only one lane is
/// supported.
struct HardeningParams {
  std::uint32_t memory_mib = 64;
  std::uint32_t iterations = 3;
  std::uint32_t parallelism = 1;

  static constexpr std::uint32_t kMinMemoryMib = 8;
  static constexpr std::uint32_t kMaxMemoryMib = 1u << 20;
  static constexpr std::uint32_t kMinIterations = 1;

  /// 64 MiB, 3 iterations, 1 lane.
  static HardeningParams defaults() noexcept { return {64, 3, 1}; }
  /// 8 MiB, 1 iteration, 1 lane. For known-answer suites only.
  static HardeningParams test_vectors() noexcept { return {8, 1, 1}; }

  /// "default", "test-vectors" or "custom:m=<MiB>,t=<iterations>,p=<lanes>".
  /// Throws Error(kParse) for unrecognized text and Error(kParameter) for
  /// values outside the allowed grid.
  static HardeningParams from_profile(std::string_view profile);

  /// Inverse of from_profile(); named profiles print their name.
  std::string profile() const;

  bool unsafe_for_production() const noexcept { return *this == test_vectors(); }

  /// Throws Error(kParameter) below the floor or with parallelism != 1.
  void validate() const;

  friend bool operator==(const HardeningParams&, const HardeningParams&) = default;
};

using Fingerprint = std::array<std::uint8_t, 8>;

/// R' = G(R, P). Immutable; holds the 64-byte state root (which doubles as
/// the HKDF pseudorandom key) and its public fingerprint. Neither secret is
/// exposed through the public API.
class UsageState {
 public:
  static constexpr std::size_t kStateRootSize = 64;

  const Fingerprint& fingerprint() const noexcept { return fingerprint_; }

  /// Same (root, passphrase, params) triple.
  friend bool operator==(const UsageState& a, const UsageState& b) noexcept;

 private:
  friend struct detail::UsageStateAccess;
  UsageState(SecretBytes state_root, const Fingerprint& fingerprint)
      : state_root_(std::move(state_root)), fingerprint_(fingerprint) {}

  SecretBytes state_root_;
  Fingerprint fingerprint_;
};

/// Reads `root`, hardens `pass` with Argon2id and extracts the usage state.
/// Throws Error(kParameter) for parameters below the floor and
/// Error(kResource) when the memory-hard step cannot allocate.
UsageState derive_usage_state(const RootEntropy& root, const Passphrase& pass,
                              const HardeningParams& params = HardeningParams::defaults());

/// 8-byte public identifier of a usage state; safe to log.
Fingerprint usage_fingerprint(const UsageState& state) noexcept;

/// 16 lowercase hex characters.
std::string fingerprint_hex(const Fingerprint& fp);

}  // namespace mscikdf

#endif  // MSCIKDF_USAGE_STATE_HPP
