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

// Root entropy and its word-sequence transport.
//
// The mnemonic carries the root R and nothing else: it is the standard
// 2048-word English list with the entropy || SHA-256-checksum index layout,
// but the legacy mnemonic-to-seed stretching is deliberately absent. Turning a
// root into key material always goes through derive_usage_state(), which
// requires a passphrase.

#ifndef MSCIKDF_MNEMONIC_HPP
#define MSCIKDF_MNEMONIC_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscikdf/bytes.hpp"

namespace mscikdf {

namespace detail {
struct RootAccess;
}

/// The long-term root R: 16 or 32 opaque bytes. Only the mnemonic codec and
/// the secret transformation read the bytes.
class RootEntropy {
 public:
  static constexpr std::size_t kShortSize = 16;
  static constexpr std::size_t kLongSize = 32;

  /// Throws Error(kCodec) unless bytes.size() is 16 or 32.
  explicit RootEntropy(ByteView bytes);

  /// Fresh root from the operating system's CSPRNG. `bits` is 128 or 256
  /// (Error(kParameter) otherwise).
  static RootEntropy generate(std::size_t bits);

  std::size_t size() const noexcept { return bytes_.size(); }
  std::size_t bits() const noexcept { return bytes_.size() * 8; }

  friend bool operator==(const RootEntropy& a, const RootEntropy& b) noexcept;

 private:
  friend struct detail::RootAccess;
  SecretBytes bytes_;
};

/// 12 or 24 words. Construction only splits; validity is checked by
/// decode_mnemonic().
class Mnemonic {
 public:
  /// Splits on single 0x20 bytes. Empty tokens (double spaces, leading or
  /// trailing space) are a decode error naming the position.
  static Mnemonic from_string(std::string_view phrase);

  explicit Mnemonic(const std::vector<std::string_view>& words);

  std::size_t size() const noexcept { return offsets_.size(); }
  std::string_view word(std::size_t i) const;
  std::vector<std::string_view> words() const;

  /// Wire form: words joined by single spaces.
  std::string_view str() const noexcept { return phrase_; }

  friend bool operator==(const Mnemonic& a, const Mnemonic& b) noexcept {
    return a.phrase_ == b.phrase_;
  }

 private:
  Mnemonic() = default;
  SecretString phrase_;
  std::vector<std::pair<std::size_t, std::size_t>> offsets_;
};

/// The fixed English list, sorted, 2048 entries.
std::span<const std::string_view, 2048> english_wordlist() noexcept;

/// Index of `word` in the list (exact, case-sensitive match).
std::optional<std::uint16_t> word_index(std::string_view word) noexcept;

/// Number of checksum bits for a root of `entropy_bytes` bytes (ENT / 32).
constexpr std::size_t checksum_bits(std::size_t entropy_bytes) noexcept {
  return entropy_bytes * 8 / 32;
}

Mnemonic encode_root(const RootEntropy& root);

/// Raw entropy as lowercase hex. Only for explicit, acknowledged display.
SecretString reveal_root_hex(const RootEntropy& root);

/// Throws WordError for an unknown word, Error(kDecode) for a word count
/// other than 12 or 24, and Error(kIntegrity) on a checksum mismatch.
RootEntropy decode_mnemonic(const Mnemonic& mnemonic);

}  // namespace mscikdf

#endif  // MSCIKDF_MNEMONIC_HPP
