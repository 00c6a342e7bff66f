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

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <deque>
#include <random>

#include "mscikdf/error.hpp"
#include "mscikdf/slots.hpp"
#include "primitives.hpp"
#include "test_util.hpp"

namespace mscikdf {
namespace {

const SlotSpec& slot(std::uint16_t id) { return SlotRegistry::builtin().at(id, id); }

ContextDescriptor ctx_for(std::uint16_t id, std::uint32_t index = 0) {
  ContextDescriptor c;
  c.algorithm_id = c.curve_id = id;
  c.index = index;
  return c;
}

DerivedMaterial material(std::uint16_t id, std::string_view secret_hex) {
  return DerivedMaterial{ctx_for(id), slot(id), secret_from_hex(secret_hex)};
}

const UsageState& tv_state() {
  static const UsageState s = derive_usage_state(testing::zero_root(), Passphrase(""),
                                                 HardeningParams::test_vectors());
  return s;
}

// Hands out queued expansions and records the retry counters it was asked for.
class ScriptedExpander final : public Expander {
 public:
  explicit ScriptedExpander(std::deque<std::string> outputs) : outputs_(std::move(outputs)) {}

  SecretBytes expand(const ContextDescriptor&, std::uint8_t retry_counter,
                     std::size_t length) const override {
    counters.push_back(retry_counter);
    if (outputs_.empty()) return SecretBytes(length, 0);
    SecretBytes out = secret_from_hex(outputs_.front());
    outputs_.pop_front();
    return out;
  }

  mutable std::vector<unsigned> counters;

 private:
  mutable std::deque<std::string> outputs_;
};

class NoExpander final : public Expander {
 public:
  SecretBytes expand(const ContextDescriptor&, std::uint8_t, std::size_t) const override {
    ADD_FAILURE() << "unexpected re-expansion";
    return {};
  }
};

std::string hex_of(const std::array<std::uint8_t, 32>& a) { return to_hex(a); }

// Schoolbook big-endian remainder (bitwise shift-subtract), independent of the
// backend used by the library.
Bytes mod_schoolbook(ByteView value, ByteView modulus) {
  const std::size_t w = modulus.size() + 1;
  Bytes rem(w, 0);
  Bytes mod(w, 0);
  std::copy(modulus.begin(), modulus.end(), mod.begin() + 1);
  for (const std::uint8_t byte : value) {
    for (int bit = 7; bit >= 0; --bit) {
      // rem = rem * 2 + bit
      unsigned carry = (byte >> bit) & 1u;
      for (std::size_t i = w; i-- > 0;) {
        const unsigned v = (rem[i] << 1) | carry;
        rem[i] = static_cast<std::uint8_t>(v);
        carry = v >> 8;
      }
      if (!std::lexicographical_compare(rem.begin(), rem.end(), mod.begin(), mod.end())) {
        unsigned borrow = 0;
        for (std::size_t i = w; i-- > 0;) {
          const int d = rem[i] - mod[i] - static_cast<int>(borrow);
          rem[i] = static_cast<std::uint8_t>(d);
          borrow = d < 0;
        }
      }
    }
  }
  return Bytes(rem.begin() + 1, rem.end());
}

Bytes openssl_raw_public(int type, ByteView secret) {
  EVP_PKEY* k = EVP_PKEY_new_raw_private_key(type, nullptr, secret.data(), secret.size());
  EXPECT_NE(k, nullptr);
  Bytes out(32);
  std::size_t n = out.size();
  EXPECT_EQ(EVP_PKEY_get_raw_public_key(k, out.data(), &n), 1);
  EVP_PKEY_free(k);
  return out;
}

// ---- Published vectors ----------------------------------------------------

TEST(Ed25519, Rfc8032Vectors) {
  struct V {
    const char* secret;
    const char* pub;
  };
  for (const V v : {V{"9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60",
                      "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a"},
                    V{"4ccd089b28ff96da9db6c346ec114e0f5b8a319f35aba624da8cf6ed4fb8a6fb",
                      "3d4017c3e843895a92b70aa74d1b7ebc9c982ccf2ec4968cc0cd55f12af4660c"},
                    V{"c5aa8df43f9f837bedb7442f31dcb7b166d38535076f094b85ce3a2e0b4458f7",
                      "fc51cd8e6218a1a38da47ed00230f0580816ed13ba3303ac5deb911548908025"}}) {
    const KeyPairOut k = finalize_ed25519(material(slot_ids::kEd25519, v.secret));
    EXPECT_EQ(to_hex(k.secret), v.secret);
    ASSERT_TRUE(k.public_key);
    EXPECT_EQ(to_hex(*k.public_key), v.pub);
  }
}

TEST(X25519, Rfc7748Vectors) {
  // RFC 7748 section 6.1 key pairs; the finalizer applies the same clamp the RFC does.
  const KeyPairOut alice = finalize_x25519(material(
      slot_ids::kX25519, "77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a"));
  EXPECT_EQ(to_hex(*alice.public_key),
            "8520f0098930a754748b7ddcb43ef75a0dbf3a0d26381af4eba4a98eaa9b4e6a");
  const KeyPairOut bob = finalize_x25519(material(
      slot_ids::kX25519, "5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb"));
  EXPECT_EQ(to_hex(*bob.public_key),
            "de9edb7d7b7dc1b4d35b61c2ece435373f8343c85b78674dadfc7e146f882b4f");
}

TEST(X25519, FinalizedSecretIsClamped) {
  const KeyPairOut k = finalize_x25519(material(slot_ids::kX25519, std::string(64, 'f')));
  EXPECT_EQ(to_hex(k.secret), "f8" + std::string(60, 'f') + "7f");
  const KeyPairOut z = finalize_x25519(material(slot_ids::kX25519, std::string(64, '0')));
  EXPECT_EQ(to_hex(z.secret), std::string(62, '0') + "40");
}

TEST(Secp256k1, GeneratorMultiples) {
  NoExpander none;
  const std::string one = std::string(63, '0') + "1";
  EXPECT_EQ(to_hex(*finalize_secp256k1(material(slot_ids::kSecp256k1, one), none).public_key),
            "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
  const std::string two = std::string(63, '0') + "2";
  EXPECT_EQ(to_hex(*finalize_secp256k1(material(slot_ids::kSecp256k1, two), none).public_key),
            "02c6047f9441ed7d6d3045406e95c07cd85c778e4b8cef3ca7abac09b95c709ee5");
  // n - 1 = -G: same x, odd y.
  const std::string n_minus_1 =
      "fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364140";
  EXPECT_EQ(
      to_hex(*finalize_secp256k1(material(slot_ids::kSecp256k1, n_minus_1), none).public_key),
      "0379be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
}

// ---- Frozen oracle values -------------------------------------------------

TEST(DeriveKey, BuiltinSlotsMatchOracle) {
  for (const auto& v : testing::frozen::kSlots) {
    const SlotSpec* s = nullptr;
    for (const SlotSpec& c : SlotRegistry::builtin().slots()) {
      if (c.name == v.name) s = &c;
    }
    ASSERT_NE(s, nullptr) << v.name;
    const KeyPairOut k = derive_key(tv_state(), ctx_for(s->algorithm_id));
    EXPECT_EQ(to_hex(k.secret), v.secret) << v.name;
    EXPECT_EQ(k.secret.size(), s->secret_length) << v.name;
    if (v.public_key) {
      ASSERT_TRUE(k.public_key) << v.name;
      EXPECT_EQ(to_hex(*k.public_key), v.public_key) << v.name;
    } else {
      EXPECT_FALSE(k.public_key) << v.name;
    }
  }
}

// ---- Independent backend cross-checks -------------------------------------

TEST(CrossCheck, Ed25519AndX25519AgainstOpenSsl) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const Bytes seed = testing::random_bytes(rng, 32);
    const KeyPairOut ed = finalize_ed25519(material(slot_ids::kEd25519, to_hex(seed)));
    ASSERT_EQ(*ed.public_key, openssl_raw_public(EVP_PKEY_ED25519, seed));
    const KeyPairOut x = finalize_x25519(material(slot_ids::kX25519, to_hex(seed)));
    ASSERT_EQ(*x.public_key, openssl_raw_public(EVP_PKEY_X25519, x.secret));
  }
}

TEST(CrossCheck, BlsReductionAgainstSchoolbook) {
  std::mt19937_64 rng(7);
  const ByteView r(kBls12381Order);
  for (int i = 0; i < 500; ++i) {
    Bytes wide = testing::random_bytes(rng, 64);
    if (i % 5 == 0) std::fill(wide.begin(), wide.begin() + 33, 0);  // small values
    ASSERT_EQ(to_hex(primitives::bls12_381_reduce(wide)), to_hex(mod_schoolbook(wide, r)));
  }
}

// ---- Retry paths ----------------------------------------------------------

TEST(Secp256k1, RetriesOutOfRangeCandidates) {
  const std::string n = to_hex(kSecp256k1Order);
  const std::string zero(64, '0');
  const std::string max(64, 'f');
  const std::string one = std::string(63, '0') + "1";
  ScriptedExpander ex({n, max, one});
  const KeyPairOut k = finalize_secp256k1(material(slot_ids::kSecp256k1, zero), ex);
  EXPECT_EQ(to_hex(k.secret), one);
  EXPECT_EQ(ex.counters, (std::vector<unsigned>{1, 2, 3}));
}

TEST(Secp256k1, ExhaustedCounterIsDerivationFailure) {
  ScriptedExpander ex({});  // always zero
  try {
    finalize_secp256k1(material(slot_ids::kSecp256k1, std::string(64, '0')), ex);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDerivationFailure);
  }
  ASSERT_EQ(ex.counters.size(), 255u);
  EXPECT_EQ(ex.counters.front(), 1u);
  EXPECT_EQ(ex.counters.back(), 255u);
}

TEST(Secp256k1, StateRetryAppendsCounterByte) {
  // The retry expansion equals HKDF-Expand(prk, label || enc || 0x01).
  const ContextDescriptor c = ctx_for(slot_ids::kSecp256k1, 9);
  const StateExpander ex(tv_state());
  const SecretBytes retry = ex.expand(c, 1, 32);
  EXPECT_FALSE(equal_ct(retry, derive(tv_state(), c).secret));
  ScriptedExpander scripted({to_hex(retry)});
  const KeyPairOut k = finalize_secp256k1(
      DerivedMaterial{c, slot(slot_ids::kSecp256k1), SecretBytes(32, 0)}, scripted);
  EXPECT_TRUE(equal_ct(k.secret, retry));
}

TEST(Bls, ZeroReductionRetries) {
  const std::string r_wide = std::string(64, '0') + to_hex(kBls12381Order);
  const std::string two_r_wide = [] {
    Bytes twice(64, 0);
    unsigned carry = 0;
    for (std::size_t i = 32; i-- > 0;) {
      const unsigned v = kBls12381Order[i] * 2u + carry;
      twice[32 + i] = static_cast<std::uint8_t>(v);
      carry = v >> 8;
    }
    twice[31] = static_cast<std::uint8_t>(carry);
    return to_hex(twice);
  }();
  const std::string five = std::string(127, '0') + "5";
  ScriptedExpander ex({std::string(128, '0'), two_r_wide, five});
  const KeyPairOut k = finalize_bls_scalar(material(slot_ids::kBls12381, r_wide), ex);
  EXPECT_EQ(to_hex(k.secret), std::string(63, '0') + "5");
  EXPECT_EQ(ex.counters, (std::vector<unsigned>{1, 2, 3}));
  EXPECT_FALSE(k.public_key);
}

TEST(Bls, ExhaustedCounterIsDerivationFailure) {
  ScriptedExpander ex({});
  EXPECT_THROW(finalize_bls_scalar(material(slot_ids::kBls12381, std::string(128, '0')), ex),
               Error);
  EXPECT_EQ(ex.counters.size(), 255u);
}

// ---- Slot checks ----------------------------------------------------------

TEST(Finalize, RejectsMaterialForAnotherSlot) {
  NoExpander none;
  const DerivedMaterial ed = material(slot_ids::kEd25519, std::string(64, '1'));
  for (auto f : {+[](const DerivedMaterial& m) { return finalize_x25519(m); },
                 +[](const DerivedMaterial& m) { return finalize_pqc_seed(m); }}) {
    try {
      f(ed);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSlotMismatch);
    }
  }
  EXPECT_THROW(finalize_secp256k1(ed, none), Error);
  EXPECT_THROW(finalize_bls_scalar(ed, none), Error);
  EXPECT_THROW(finalize_ed25519(material(slot_ids::kX25519, std::string(64, '1'))), Error);
}

TEST(Finalize, RejectsWrongLength) {
  DerivedMaterial m = material(slot_ids::kEd25519, std::string(62, '1'));
  try {
    finalize_ed25519(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSlotMismatch);
  }
}

TEST(Finalize, PqcSeedsPassThroughAtExactLength) {
  for (const std::uint16_t id : {slot_ids::kMlKem768, slot_ids::kMlDsa65}) {
    const DerivedMaterial m = derive(tv_state(), ctx_for(id, 3));
    const KeyPairOut k = finalize(m, StateExpander(tv_state()));
    EXPECT_TRUE(equal_ct(k.secret, m.secret));
    EXPECT_EQ(k.secret.size(), slot(id).secret_length);
    EXPECT_FALSE(k.public_key);
  }
}

TEST(Finalize, RuntimeSlotPassesThrough) {
  const SlotRegistry reg = SlotRegistry::builtin().with_slot(
      {0x0100, 0x0100, 48, 48, SlotKind::kSigningSeed, "future-sig", "future-sig", "future-sig"});
  const KeyPairOut k = derive_key(tv_state(), ctx_for(0x0100), reg);
  EXPECT_EQ(k.secret.size(), 48u);
  EXPECT_FALSE(k.public_key);
}

// Range rules over many derivations (larger counts run in the acceptance
// suite).
TEST(FinalizeProperty, OutputsRespectSlotRanges) {
  const ByteView n(kSecp256k1Order);
  const ByteView r(kBls12381Order);
  for (std::uint32_t i = 0; i < 2000; ++i) {
    const KeyPairOut s = derive_key(tv_state(), ctx_for(slot_ids::kSecp256k1, i));
    ASSERT_TRUE(std::lexicographical_compare(s.secret.begin(), s.secret.end(), n.begin(),
                                             n.end()));
    ASSERT_NE(to_hex(s.secret), std::string(64, '0'));
    const KeyPairOut x = derive_key(tv_state(), ctx_for(slot_ids::kX25519, i));
    ASSERT_EQ(x.secret[0] & 7, 0);
    ASSERT_EQ(x.secret[31] & 0xc0, 0x40);
    const KeyPairOut b = derive_key(tv_state(), ctx_for(slot_ids::kBls12381, i));
    ASSERT_EQ(b.secret.size(), 32u);
    ASSERT_TRUE(std::lexicographical_compare(b.secret.begin(), b.secret.end(), r.begin(),
                                             r.end()));
  }
}

TEST(ClampX25519, MatchesRfcBitOperations) {
  std::array<std::uint8_t, 32> k{};
  k.fill(0xff);
  clamp_x25519(k);
  EXPECT_EQ(k[0], 0xf8);
  EXPECT_EQ(k[31], 0x7f);
  EXPECT_EQ(hex_of(k).substr(2, 60), std::string(60, 'f'));
}

}  // namespace
}  // namespace mscikdf
