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

#include "primitives.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>
#include <sodium.h>

#include <cerrno>
#include <memory>

#include "mscikdf/error.hpp"

namespace mscikdf::primitives {

namespace {

struct BnDeleter {
  void operator()(BIGNUM* p) const noexcept { BN_clear_free(p); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* p) const noexcept { BN_CTX_free(p); }
};
struct GroupDeleter {
  void operator()(EC_GROUP* p) const noexcept { EC_GROUP_free(p); }
};
struct PointDeleter {
  void operator()(EC_POINT* p) const noexcept { EC_POINT_clear_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using GroupPtr = std::unique_ptr<EC_GROUP, GroupDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

[[noreturn]] void backend_failure(const char* what) {
  throw Error(ErrorCode::kResource, std::string("crypto backend failure: ") + what);
}

// r = 0x73eda753...00000001
constexpr std::uint8_t kBlsOrder[32] = {
    0x73, 0xed, 0xa7, 0x53, 0x29, 0x9d, 0x7d, 0x48, 0x33, 0x39, 0xd8,
    0x08, 0x09, 0xa1, 0xd8, 0x05, 0x53, 0xbd, 0xa4, 0x02, 0xff, 0xfe,
    0x5b, 0xfe, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00, 0x00, 0x01};

}  // namespace

void ensure_initialized() {
  static const int status = sodium_init();
  if (status < 0) backend_failure("sodium_init");
}

SecretBytes random_bytes(std::size_t n) {
  ensure_initialized();
  SecretBytes out(n);
  randombytes_buf(out.data(), out.size());
  return out;
}

std::array<std::uint8_t, 32> sha256(std::initializer_list<ByteView> parts) {
  ensure_initialized();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  for (const ByteView p : parts) crypto_hash_sha256_update(&st, p.data(), p.size());
  std::array<std::uint8_t, 32> out{};
  crypto_hash_sha256_final(&st, out.data());
  secure_wipe(&st, sizeof st);
  return out;
}

SecretBytes hmac_sha512(ByteView key, std::initializer_list<ByteView> parts) {
  ensure_initialized();
  crypto_auth_hmacsha512_state st;
  crypto_auth_hmacsha512_init(&st, key.data(), key.size());
  for (const ByteView p : parts) crypto_auth_hmacsha512_update(&st, p.data(), p.size());
  SecretBytes out(kSha512Size);
  crypto_auth_hmacsha512_final(&st, out.data());
  secure_wipe(&st, sizeof st);
  return out;
}

SecretBytes hkdf_extract_sha512(ByteView salt, std::initializer_list<ByteView> ikm_parts) {
  return hmac_sha512(salt, ikm_parts);
}

SecretBytes hkdf_expand_sha512(ByteView prk, std::initializer_list<ByteView> info_parts,
                               std::size_t length) {
  if (length > 255 * kSha512Size) {
    throw Error(ErrorCode::kParameter, "HKDF-Expand length exceeds 255 blocks");
  }
  ensure_initialized();
  SecretBytes okm;
  okm.reserve(length);
  SecretBytes block;
  for (std::uint8_t counter = 1; okm.size() < length; ++counter) {
    crypto_auth_hmacsha512_state st;
    crypto_auth_hmacsha512_init(&st, prk.data(), prk.size());
    crypto_auth_hmacsha512_update(&st, block.data(), block.size());
    for (const ByteView p : info_parts) crypto_auth_hmacsha512_update(&st, p.data(), p.size());
    crypto_auth_hmacsha512_update(&st, &counter, 1);
    block.resize(kSha512Size);
    crypto_auth_hmacsha512_final(&st, block.data());
    secure_wipe(&st, sizeof st);
    const std::size_t take = std::min(kSha512Size, length - okm.size());
    okm.insert(okm.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return okm;
}

SecretBytes argon2id(ByteView password, ByteView salt, const Argon2Params& params,
                     std::size_t tag_length) {
  ensure_initialized();
  if (salt.size() != crypto_pwhash_SALTBYTES) {
    throw Error(ErrorCode::kParameter, "Argon2id salt must be 16 bytes");
  }
  SecretBytes out(tag_length);
  errno = 0;
  const int rc = crypto_pwhash(
      out.data(), out.size(), reinterpret_cast<const char*>(password.data()),
      password.size(), salt.data(), params.iterations,
      static_cast<std::size_t>(params.memory_kib) * 1024u, crypto_pwhash_ALG_ARGON2ID13);
  if (rc != 0) {
    if (errno == ENOMEM) {
      throw Error(ErrorCode::kResource, "memory-hard step could not allocate its scratch memory");
    }
    throw Error(ErrorCode::kParameter, "Argon2id rejected the hardening parameters");
  }
  return out;
}

std::array<std::uint8_t, 32> ed25519_public_from_seed(ByteView seed) {
  ensure_initialized();
  if (seed.size() != crypto_sign_SEEDBYTES) backend_failure("ed25519 seed size");
  std::array<std::uint8_t, 32> pk{};
  SecretBytes sk(crypto_sign_SECRETKEYBYTES);
  crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
  return pk;
}

std::array<std::uint8_t, 32> x25519_base_mult(ByteView scalar) {
  ensure_initialized();
  if (scalar.size() != crypto_scalarmult_SCALARBYTES) backend_failure("x25519 scalar size");
  std::array<std::uint8_t, 32> pk{};
  if (crypto_scalarmult_base(pk.data(), scalar.data()) != 0) backend_failure("x25519");
  return pk;
}

namespace {
// Read-only after construction, so shared across threads.
const EC_GROUP* secp256k1_group() {
  static const GroupPtr group(EC_GROUP_new_by_curve_name(NID_secp256k1));
  return group.get();
}
}  // namespace

std::array<std::uint8_t, 33> secp256k1_public_compressed(ByteView scalar) {
  const EC_GROUP* group = secp256k1_group();
  BnCtxPtr ctx(BN_CTX_secure_new());
  BnPtr k(BN_secure_new());
  if (!group || !ctx || !k) backend_failure("secp256k1 setup");
  BN_set_flags(k.get(), BN_FLG_CONSTTIME);
  if (BN_bin2bn(scalar.data(), static_cast<int>(scalar.size()), k.get()) == nullptr) {
    backend_failure("secp256k1 scalar");
  }
  PointPtr point(EC_POINT_new(group));
  if (!point || EC_POINT_mul(group, point.get(), k.get(), nullptr, nullptr, ctx.get()) != 1) {
    backend_failure("secp256k1 multiply");
  }
  std::array<std::uint8_t, 33> out{};
  if (EC_POINT_point2oct(group, point.get(), POINT_CONVERSION_COMPRESSED, out.data(),
                         out.size(), ctx.get()) != out.size()) {
    backend_failure("secp256k1 encode");
  }
  return out;
}

SecretBytes bls12_381_reduce(ByteView value) {
  BnCtxPtr ctx(BN_CTX_secure_new());
  BnPtr a(BN_secure_new());
  BnPtr order(BN_new());
  BnPtr rem(BN_secure_new());
  if (!ctx || !a || !order || !rem) backend_failure("bignum setup");
  BN_set_flags(a.get(), BN_FLG_CONSTTIME);
  if (BN_bin2bn(value.data(), static_cast<int>(value.size()), a.get()) == nullptr ||
      BN_bin2bn(kBlsOrder, sizeof kBlsOrder, order.get()) == nullptr ||
      BN_mod(rem.get(), a.get(), order.get(), ctx.get()) != 1) {
    backend_failure("mod r");
  }
  SecretBytes out(32);
  if (BN_bn2binpad(rem.get(), out.data(), static_cast<int>(out.size())) != 32) {
    backend_failure("mod r encode");
  }
  return out;
}

}  // namespace mscikdf::primitives
