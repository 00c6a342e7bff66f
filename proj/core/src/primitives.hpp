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

// Thin wrappers over libsodium / libcrypto. Internal to the core library.

#ifndef MSCIKDF_SRC_PRIMITIVES_HPP
#define MSCIKDF_SRC_PRIMITIVES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>

#include "mscikdf/bytes.hpp"

namespace mscikdf::primitives {

inline constexpr std::size_t kSha512Size = 64;

/// Idempotent; throws Error(kResource) if libsodium cannot initialize.
void ensure_initialized();

/// `n` bytes from the operating system's CSPRNG.
SecretBytes random_bytes(std::size_t n);

std::array<std::uint8_t, 32> sha256(std::initializer_list<ByteView> parts);

/// HMAC-SHA-512 over the concatenation of `parts`.
SecretBytes hmac_sha512(ByteView key, std::initializer_list<ByteView> parts);

/// HKDF-Extract with SHA-512; the IKM is the concatenation of `ikm_parts`.
SecretBytes hkdf_extract_sha512(ByteView salt, std::initializer_list<ByteView> ikm_parts);

/// HKDF-Expand with SHA-512; `info` is the concatenation of `info_parts`.
/// Throws Error(kParameter) if length > 255 * 64.
SecretBytes hkdf_expand_sha512(ByteView prk, std::initializer_list<ByteView> info_parts,
                               std::size_t length);

struct Argon2Params {
  std::uint32_t memory_kib;
  std::uint32_t iterations;
};

/// Argon2id v1.3, single lane. Throws Error(kResource) on allocation failure,
/// Error(kParameter) otherwise.
SecretBytes argon2id(ByteView password, ByteView salt, const Argon2Params& params,
                     std::size_t tag_length);

std::array<std::uint8_t, 32> ed25519_public_from_seed(ByteView seed);

/// `scalar` must already be clamped; the backend does not re-clamp observably.
std::array<std::uint8_t, 32> x25519_base_mult(ByteView scalar);

/// `scalar` is a 32-byte big-endian value in [1, n-1].
std::array<std::uint8_t, 33> secp256k1_public_compressed(ByteView scalar);

/// Big-endian `value` reduced modulo the BLS12-381 scalar field order,
/// returned as 32 big-endian bytes.
SecretBytes bls12_381_reduce(ByteView value);

}  // namespace mscikdf::primitives

#endif  // MSCIKDF_SRC_PRIMITIVES_HPP
