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

// Context descriptors and per-context expansion of a usage state.
//
// Canonical encoding (all integers big-endian):
//
//   version:1 | algorithm_id:2 | curve_id:2 | len:2 | purpose | index:4 |
//   ext_count:2 | { tag:2 | len:2 | value }*
//
// Derivation:
//
//   secret = HKDF-SHA-512-Expand(prk, "MSCIKDF/v1/ctx" || encoding, L)
//
// where L is the slot's expand length. Rejection-sampling slots re-expand
// with a single retry-counter byte appended to the info string.
//
// Text form:
//
//   mscikdf:v<version>/<algorithm>/<curve>/<purpose>/<index>[?tag=hex&...]
//
// <algorithm> and <curve> are registry tokens or 0xhhhh, <purpose> is
// percent-encoded, tags are decimal and strictly increasing.

#ifndef MSCIKDF_CONTEXT_HPP
#define MSCIKDF_CONTEXT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscikdf/bytes.hpp"
#include "mscikdf/registry.hpp"
#include "mscikdf/usage_state.hpp"

namespace mscikdf {

inline constexpr std::string_view kContextLabel = "MSCIKDF/v1/ctx";

struct ContextExtension {
  std::uint16_t tag = 0;
  Bytes value;

  friend bool operator==(const ContextExtension&, const ContextExtension&) = default;
};

struct ContextDescriptor {
  static constexpr std::size_t kMaxPurposeSize = 256;
  static constexpr std::size_t kMaxExtensionValueSize = 1024;

  std::uint8_t version = 1;
  std::uint16_t algorithm_id = 0;
  std::uint16_t curve_id = 0;
  /// Free-form UTF-8, uninterpreted.
  std::string purpose;
  std::uint32_t index = 0;
  /// Strictly increasing tags.
  std::vector<ContextExtension> extensions;

  friend bool operator==(const ContextDescriptor&, const ContextDescriptor&) = default;
};

/// Throws Error(kEncoding) for oversized fields, invalid UTF-8, version 0,
/// non-increasing extension tags, or an (algorithm, curve) pair absent from
/// `registry`.
Bytes encode_context(const ContextDescriptor& c,
                     const SlotRegistry& registry = SlotRegistry::builtin());

/// Parses a canonical encoding back into a descriptor (no registry check).
/// Throws Error(kEncoding) on truncation, trailing bytes or layout
/// violations.
ContextDescriptor decode_context(ByteView encoding);

std::string format_context(const ContextDescriptor& c,
                           const SlotRegistry& registry = SlotRegistry::builtin());

/// Throws Error(kParse) for malformed text and Error(kUnregisteredSlot) for an
/// unknown algorithm/curve token (the message names the token).
ContextDescriptor parse_context(std::string_view text,
                                const SlotRegistry& registry = SlotRegistry::builtin());

/// Raw slot-typed output of the expansion step. Only the secret bytes leave
/// the engine; the state's pseudorandom key is never reachable from here.
struct DerivedMaterial {
  ContextDescriptor context;
  SlotSpec slot;
  /// slot.expand_length bytes.
  SecretBytes secret;

  SlotKind kind() const noexcept { return slot.kind; }
};

/// Refuses unregistered slots (Error(kUnregisteredSlot)); never substitutes.
DerivedMaterial derive(const UsageState& state, const ContextDescriptor& c,
                       const SlotRegistry& registry = SlotRegistry::builtin());

/// Element-wise derive() in input order. The first failing element aborts
/// with a BatchError carrying its index.
std::vector<DerivedMaterial> derive_batch(
    const UsageState& state, std::span<const ContextDescriptor> contexts,
    const SlotRegistry& registry = SlotRegistry::builtin());

/// Source of re-expansions for rejection-sampling finalizers.
class Expander {
 public:
  virtual ~Expander() = default;

  /// Expansion of `c` with `retry_counter` appended to the info string.
  virtual SecretBytes expand(const ContextDescriptor& c, std::uint8_t retry_counter,
                             std::size_t length) const = 0;
};

/// Expander backed by a usage state.
class StateExpander final : public Expander {
 public:
  explicit StateExpander(const UsageState& state,
                         const SlotRegistry& registry = SlotRegistry::builtin())
      : state_(state), registry_(registry) {}

  SecretBytes expand(const ContextDescriptor& c, std::uint8_t retry_counter,
                     std::size_t length) const override;

 private:
  const UsageState& state_;
  const SlotRegistry& registry_;
};

}  // namespace mscikdf

#endif  // MSCIKDF_CONTEXT_HPP
