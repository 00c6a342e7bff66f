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

#ifndef MSCIKDF_REGISTRY_HPP
#define MSCIKDF_REGISTRY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mscikdf {

enum class SlotKind { kSigningSeed, kDhScalar, kFieldScalar, kPqcSeed };

std::string_view slot_kind_name(SlotKind kind) noexcept;

/// One algorithm slot: a registered (algorithm_id, curve_id) pair.
struct SlotSpec {
  std::uint16_t algorithm_id = 0;
  std::uint16_t curve_id = 0;
  /// Length of the finalized secret.
  std::size_t secret_length = 0;
  /// Bytes requested from the context engine. Equal to secret_length except
  /// for wide-reduction slots (BLS12-381 scalar: 64).
  std::size_t expand_length = 0;
  SlotKind kind = SlotKind::kSigningSeed;
  std::string name;
  /// Tokens used in the context text form; empty means "print the id in hex".
  std::string algorithm_token;
  std::string curve_token;

  friend bool operator==(const SlotSpec&, const SlotSpec&) = default;
};

namespace slot_ids {
inline constexpr std::uint16_t kEd25519 = 0x0001;
inline constexpr std::uint16_t kX25519 = 0x0002;
inline constexpr std::uint16_t kSecp256k1 = 0x0003;
inline constexpr std::uint16_t kBls12381 = 0x0004;
inline constexpr std::uint16_t kMlKem768 = 0x0010;
inline constexpr std::uint16_t kMlDsa65 = 0x0011;
}  // namespace slot_ids

/// The six builtin slots, in id order.
std::vector<SlotSpec> registry_builtin();

/// Immutable slot table. with_slot() returns a new registry; existing values
/// are never mutated, so a registry may be shared freely across threads.
class SlotRegistry {
 public:
  static constexpr std::size_t kMinSecretLength = 16;
  static constexpr std::size_t kMaxSecretLength = 128;

  /// Process-wide builtin registry.
  static const SlotRegistry& builtin();

  /// Validates uniqueness, lengths and token consistency.
  explicit SlotRegistry(std::vector<SlotSpec> slots);

  /// Throws Error(kParameter) if `slot` conflicts with an existing entry.
  SlotRegistry with_slot(SlotSpec slot) const;

  std::span<const SlotSpec> slots() const noexcept { return slots_; }

  const SlotSpec* find(std::uint16_t algorithm_id, std::uint16_t curve_id) const noexcept;

  /// Throws Error(kUnregisteredSlot).
  const SlotSpec& at(std::uint16_t algorithm_id, std::uint16_t curve_id) const;

  std::optional<std::uint16_t> algorithm_by_token(std::string_view token) const noexcept;
  std::optional<std::uint16_t> curve_by_token(std::string_view token) const noexcept;
  std::string_view algorithm_token(std::uint16_t id) const noexcept;
  std::string_view curve_token(std::uint16_t id) const noexcept;

 private:
  std::vector<SlotSpec> slots_;
};

}  // namespace mscikdf

#endif  // MSCIKDF_REGISTRY_HPP
