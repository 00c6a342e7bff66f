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

// The reference engine and the broken fixtures used as negative controls.
// The fixtures are never reachable from the derivation API; only the harness
// and the `check --negative-control` command use them.

#include "access.hpp"
#include "mscikdf/harness.hpp"
#include "primitives.hpp"

namespace mscikdf {

namespace {

class ReferenceEngine final : public DerivationEngine {
 public:
  std::string_view name() const noexcept override { return "reference"; }

  UsageState usage_state(const RootEntropy& root, const Passphrase& pass,
                         const HardeningParams& params) const override {
    return derive_usage_state(root, pass, params);
  }

  DerivedMaterial derive(const UsageState& state, const ContextDescriptor& c,
                         const SlotRegistry& registry) const override {
    return mscikdf::derive(state, c, registry);
  }
};

class OmitAlgorithmEngine final : public DerivationEngine {
 public:
  std::string_view name() const noexcept override { return "omit-algorithm"; }

  UsageState usage_state(const RootEntropy& root, const Passphrase& pass,
                         const HardeningParams& params) const override {
    return derive_usage_state(root, pass, params);
  }

  DerivedMaterial derive(const UsageState& state, const ContextDescriptor& c,
                         const SlotRegistry& registry) const override {
    const SlotSpec& slot = registry.at(c.algorithm_id, c.curve_id);
    Bytes encoding = encode_context(c, registry);
    // Drop algorithm_id and curve_id (bytes 1..4).
    encoding.erase(encoding.begin() + 1, encoding.begin() + 5);
    SecretBytes secret = primitives::hkdf_expand_sha512(
        detail::UsageStateAccess::prk(state), {as_bytes(kContextLabel), encoding},
        slot.expand_length);
    return DerivedMaterial{c, slot, std::move(secret)};
  }
};

class ConstantSaltEngine final : public DerivationEngine {
 public:
  std::string_view name() const noexcept override { return "constant-salt"; }

  UsageState usage_state(const RootEntropy&, const Passphrase& pass,
                         const HardeningParams& params) const override {
    params.validate();
    static constexpr std::uint8_t kSalt[16] = {};
    const SecretBytes hardened =
        primitives::argon2id(detail::PassphraseAccess::bytes(pass), kSalt,
                             {params.memory_mib * 1024u, params.iterations}, 32);
    return detail::UsageStateAccess::make(
        primitives::hkdf_extract_sha512(as_bytes(kExtractSalt), {hardened}));
  }

  DerivedMaterial derive(const UsageState& state, const ContextDescriptor& c,
                         const SlotRegistry& registry) const override {
    return mscikdf::derive(state, c, registry);
  }
};

}  // namespace

const DerivationEngine& reference_engine() noexcept {
  static const ReferenceEngine engine;
  return engine;
}

namespace fixtures {

const DerivationEngine& omit_algorithm_engine() noexcept {
  static const OmitAlgorithmEngine engine;
  return engine;
}

const DerivationEngine& constant_salt_engine() noexcept {
  static const ConstantSaltEngine engine;
  return engine;
}

const DerivationEngine* by_name(std::string_view name) noexcept {
  if (name == "omit-algorithm") return &omit_algorithm_engine();
  if (name == "constant-salt") return &constant_salt_engine();
  return nullptr;
}

}  // namespace fixtures

}  // namespace mscikdf
