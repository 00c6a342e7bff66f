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

#include "mscikdf/registry.hpp"

#include <cstdio>

#include "mscikdf/error.hpp"

namespace mscikdf {

namespace {

SlotSpec builtin_slot(std::uint16_t id, std::size_t secret, std::size_t expand, SlotKind kind,
                      std::string name) {
  return SlotSpec{id, id, secret, expand, kind, name, name, name};
}

std::string hex16(std::uint16_t v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04x", v);
  return buf;
}

}  // namespace

std::string_view slot_kind_name(SlotKind kind) noexcept {
  switch (kind) {
    case SlotKind::kSigningSeed: return "signing-seed";
    case SlotKind::kDhScalar: return "dh-scalar";
    case SlotKind::kFieldScalar: return "field-scalar";
    case SlotKind::kPqcSeed: return "pqc-seed";
  }
  return "unknown";
}

std::vector<SlotSpec> registry_builtin() {
  using namespace slot_ids;
  return {
      builtin_slot(kEd25519, 32, 32, SlotKind::kSigningSeed, "ed25519"),
      builtin_slot(kX25519, 32, 32, SlotKind::kDhScalar, "x25519"),
      builtin_slot(kSecp256k1, 32, 32, SlotKind::kFieldScalar, "secp256k1"),
      builtin_slot(kBls12381, 32, 64, SlotKind::kFieldScalar, "bls12-381-scalar"),
      builtin_slot(kMlKem768, 64, 64, SlotKind::kPqcSeed, "ml-kem-768-seed"),
      builtin_slot(kMlDsa65, 32, 32, SlotKind::kPqcSeed, "ml-dsa-65-seed"),
  };
}

const SlotRegistry& SlotRegistry::builtin() {
  static const SlotRegistry registry(registry_builtin());
  return registry;
}

SlotRegistry::SlotRegistry(std::vector<SlotSpec> slots) {
  for (SlotSpec& s : slots) {
    if (s.expand_length == 0) s.expand_length = s.secret_length;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::kParameter, "slot " + hex16(s.algorithm_id) + "/" +
                                             hex16(s.curve_id) + ": " + why);
    };
    if (s.secret_length < kMinSecretLength || s.secret_length > kMaxSecretLength ||
        s.expand_length < kMinSecretLength || s.expand_length > kMaxSecretLength) {
      fail("lengths must be within [16, 128]");
    }
    if (find(s.algorithm_id, s.curve_id) != nullptr) fail("already registered");
    for (const std::string* tok : {&s.algorithm_token, &s.curve_token}) {
      if (tok->starts_with("0x")) fail("token '" + *tok + "' collides with the hex id form");
      for (const char c : *tok) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_';
        if (!ok) fail("token '" + *tok + "' has a character outside [A-Za-z0-9._-]");
      }
    }
    for (const SlotSpec& o : slots_) {
      // A token names exactly one id and an id carries at most one token.
      auto clash = [](std::uint16_t id_a, const std::string& tok_a, std::uint16_t id_b,
                      const std::string& tok_b) {
        if (tok_a.empty() || tok_b.empty()) return false;
        return (tok_a == tok_b) != (id_a == id_b);
      };
      if (clash(s.algorithm_id, s.algorithm_token, o.algorithm_id, o.algorithm_token)) {
        fail("algorithm token conflicts with slot " + o.name);
      }
      if (clash(s.curve_id, s.curve_token, o.curve_id, o.curve_token)) {
        fail("curve token conflicts with slot " + o.name);
      }
    }
    slots_.push_back(std::move(s));
  }
}

SlotRegistry SlotRegistry::with_slot(SlotSpec slot) const {
  std::vector<SlotSpec> next(slots_.begin(), slots_.end());
  next.push_back(std::move(slot));
  return SlotRegistry(std::move(next));
}

const SlotSpec* SlotRegistry::find(std::uint16_t algorithm_id,
                                   std::uint16_t curve_id) const noexcept {
  for (const SlotSpec& s : slots_) {
    if (s.algorithm_id == algorithm_id && s.curve_id == curve_id) return &s;
  }
  return nullptr;
}

const SlotSpec& SlotRegistry::at(std::uint16_t algorithm_id, std::uint16_t curve_id) const {
  const SlotSpec* s = find(algorithm_id, curve_id);
  if (s == nullptr) {
    throw Error(ErrorCode::kUnregisteredSlot, "unregistered slot (algorithm " +
                                                  hex16(algorithm_id) + ", curve " +
                                                  hex16(curve_id) + ")");
  }
  return *s;
}

std::optional<std::uint16_t> SlotRegistry::algorithm_by_token(
    std::string_view token) const noexcept {
  for (const SlotSpec& s : slots_) {
    if (!s.algorithm_token.empty() && s.algorithm_token == token) return s.algorithm_id;
  }
  return std::nullopt;
}

std::optional<std::uint16_t> SlotRegistry::curve_by_token(std::string_view token) const noexcept {
  for (const SlotSpec& s : slots_) {
    if (!s.curve_token.empty() && s.curve_token == token) return s.curve_id;
  }
  return std::nullopt;
}

std::string_view SlotRegistry::algorithm_token(std::uint16_t id) const noexcept {
  for (const SlotSpec& s : slots_) {
    if (s.algorithm_id == id && !s.algorithm_token.empty()) return s.algorithm_token;
  }
  return {};
}

std::string_view SlotRegistry::curve_token(std::uint16_t id) const noexcept {
  for (const SlotSpec& s : slots_) {
    if (s.curve_id == id && !s.curve_token.empty()) return s.curve_token;
  }
  return {};
}

}  // namespace mscikdf
