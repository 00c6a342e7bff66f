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

// Per-family finalization of derived material.
//
//   ed25519    32-byte RFC 8032 seed, unchanged; public key per RFC 8032.
//   x25519     RFC 7748 clamp; public = X25519(k, 9).
//   secp256k1  big-endian scalar; rejected unless in [1, n-1], retried with
//              counter 1..255; public = 33-byte compressed SEC1 point.
//   bls12-381  64 bytes reduced mod r; retried with a counter on zero; no
//              public key.
//   pqc seeds  bytes unchanged (ML-KEM-768 d||z, ML-DSA-65 xi).

#ifndef MSCIKDF_SLOTS_HPP
#define MSCIKDF_SLOTS_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "mscikdf/bytes.hpp"
#include "mscikdf/context.hpp"
#include "mscikdf/registry.hpp"

namespace mscikdf {

struct KeyPairOut {
  SecretBytes secret;
  /// Present iff the slot has a public mapping (ed25519, x25519, secp256k1).
  std::optional<Bytes> public_key;
  SlotSpec slot;
};

/// secp256k1 group order n, big-endian.
extern const std::array<std::uint8_t, 32> kSecp256k1Order;
/// BLS12-381 scalar field order r, big-endian.
extern const std::array<std::uint8_t, 32> kBls12381Order;

inline constexpr unsigned kMaxRetryCounter = 255;

/// Slot-mismatch errors (Error(kSlotMismatch)) are raised when the material
/// was derived for a different slot.
KeyPairOut finalize_ed25519(const DerivedMaterial& m);
KeyPairOut finalize_x25519(const DerivedMaterial& m);
/// Throws Error(kDerivationFailure) if counter 255 still yields no scalar.
KeyPairOut finalize_secp256k1(const DerivedMaterial& m, const Expander& expander);
KeyPairOut finalize_bls_scalar(const DerivedMaterial& m, const Expander& expander);
KeyPairOut finalize_pqc_seed(const DerivedMaterial& m);

/// Dispatches on the slot. Slots without a family rule (runtime-registered
/// ones) pass the derived bytes through with no public key.
KeyPairOut finalize(const DerivedMaterial& m, const Expander& expander);

/// derive() followed by finalize() for one context.
KeyPairOut derive_key(const UsageState& state, const ContextDescriptor& c,
                      const SlotRegistry& registry = SlotRegistry::builtin());

/// RFC 7748 clamp in place on a 32-byte scalar.
void clamp_x25519(std::span<std::uint8_t, 32> scalar) noexcept;

}  // namespace mscikdf

#endif  // MSCIKDF_SLOTS_HPP
