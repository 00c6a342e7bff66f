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

#include "mscikdf/slots.hpp"

#include <algorithm>

#include "mscikdf/error.hpp"
#include "primitives.hpp"

namespace mscikdf {

const std::array<std::uint8_t, 32> kSecp256k1Order = {
    0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff,
    0xff, 0xff, 0xff, 0xff, 0xfe, 0xba, 0xae, 0xdc, 0xe6, 0xaf, 0x48,
    0xa0, 0x3b, 0xbf, 0xd2, 0x5e, 0x8c, 0xd0, 0x36, 0x41, 0x41};

const std::array<std::uint8_t, 32> kBls12381Order = {
    0x73, 0xed, 0xa7, 0x53, 0x29, 0x9d, 0x7d, 0x48, 0x33, 0x39, 0xd8,
    0x08, 0x09, 0xa1, 0xd8, 0x05, 0x53, 0xbd, 0xa4, 0x02, 0xff, 0xfe,
    0x5b, 0xfe, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00, 0x00, 0x01};

namespace {

void require_slot(const DerivedMaterial& m, std::uint16_t id, const char* name) {
  if (m.context.algorithm_id != id || m.context.curve_id != id || m.slot.algorithm_id != id ||
      m.slot.curve_id != id) {
    throw Error(ErrorCode::kSlotMismatch,
                std::string("material was not derived for the ") + name + " slot");
  }
}

void require_length(const SecretBytes& s, std::size_t n) {
  if (s.size() != n) {
    throw Error(ErrorCode::kSlotMismatch, "derived material has length " +
                                              std::to_string(s.size()) + ", expected " +
                                              std::to_string(n));
  }
}

bool all_zero(ByteView v) {
  std::uint8_t acc = 0;
  for (const std::uint8_t b : v) acc |= b;
  return acc == 0;
}

// Big-endian a < b for equal-length inputs.
bool less_be(ByteView a, ByteView b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool valid_secp256k1_scalar(ByteView k) { return !all_zero(k) && less_be(k, kSecp256k1Order); }

}  // namespace

void clamp_x25519(std::span<std::uint8_t, 32> scalar) noexcept {
  scalar[0] &= 248;
  scalar[31] &= 127;
  scalar[31] |= 64;
}

KeyPairOut finalize_ed25519(const DerivedMaterial& m) {
  require_slot(m, slot_ids::kEd25519, "ed25519");
  require_length(m.secret, 32);
  const auto pk = primitives::ed25519_public_from_seed(m.secret);
  return KeyPairOut{m.secret, Bytes(pk.begin(), pk.end()), m.slot};
}

KeyPairOut finalize_x25519(const DerivedMaterial& m) {
  require_slot(m, slot_ids::kX25519, "x25519");
  require_length(m.secret, 32);
  SecretBytes scalar = m.secret;
  clamp_x25519(std::span<std::uint8_t, 32>(scalar.data(), 32));
  const auto pk = primitives::x25519_base_mult(scalar);
  return KeyPairOut{std::move(scalar), Bytes(pk.begin(), pk.end()), m.slot};
}

KeyPairOut finalize_secp256k1(const DerivedMaterial& m, const Expander& expander) {
  require_slot(m, slot_ids::kSecp256k1, "secp256k1");
  require_length(m.secret, 32);
  SecretBytes candidate = m.secret;
  for (unsigned counter = 1; !valid_secp256k1_scalar(candidate); ++counter) {
    if (counter > kMaxRetryCounter) {
      throw Error(ErrorCode::kDerivationFailure, "secp256k1 retry counter exhausted");
    }
    candidate = expander.expand(m.context, static_cast<std::uint8_t>(counter), 32);
    require_length(candidate, 32);
  }
  const auto pk = primitives::secp256k1_public_compressed(candidate);
  return KeyPairOut{std::move(candidate), Bytes(pk.begin(), pk.end()), m.slot};
}

KeyPairOut finalize_bls_scalar(const DerivedMaterial& m, const Expander& expander) {
  require_slot(m, slot_ids::kBls12381, "bls12-381-scalar");
  require_length(m.secret, 64);
  SecretBytes scalar = primitives::bls12_381_reduce(m.secret);
  for (unsigned counter = 1; all_zero(scalar); ++counter) {
    if (counter > kMaxRetryCounter) {
      throw Error(ErrorCode::kDerivationFailure, "bls12-381 retry counter exhausted");
    }
    const SecretBytes wide = expander.expand(m.context, static_cast<std::uint8_t>(counter), 64);
    require_length(wide, 64);
    scalar = primitives::bls12_381_reduce(wide);
  }
  return KeyPairOut{std::move(scalar), std::nullopt, m.slot};
}

KeyPairOut finalize_pqc_seed(const DerivedMaterial& m) {
  if (m.slot.kind != SlotKind::kPqcSeed || m.slot.algorithm_id != m.context.algorithm_id ||
      m.slot.curve_id != m.context.curve_id) {
    throw Error(ErrorCode::kSlotMismatch, "material was not derived for a pqc-seed slot");
  }
  require_length(m.secret, m.slot.secret_length);
  return KeyPairOut{m.secret, std::nullopt, m.slot};
}

KeyPairOut finalize(const DerivedMaterial& m, const Expander& expander) {
  if (m.slot.algorithm_id == m.slot.curve_id) {
    switch (m.slot.algorithm_id) {
      case slot_ids::kEd25519: return finalize_ed25519(m);
      case slot_ids::kX25519: return finalize_x25519(m);
      case slot_ids::kSecp256k1: return finalize_secp256k1(m, expander);
      case slot_ids::kBls12381: return finalize_bls_scalar(m, expander);
      default: break;
    }
  }
  if (m.slot.kind == SlotKind::kPqcSeed) return finalize_pqc_seed(m);
  require_length(m.secret, m.slot.secret_length);
  return KeyPairOut{m.secret, std::nullopt, m.slot};
}

KeyPairOut derive_key(const UsageState& state, const ContextDescriptor& c,
                      const SlotRegistry& registry) {
  const StateExpander expander(state, registry);
  return finalize(derive(state, c, registry), expander);
}

}  // namespace mscikdf
