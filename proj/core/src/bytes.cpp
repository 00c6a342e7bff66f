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

#include "mscikdf/bytes.hpp"

#include <sodium.h>

#include "mscikdf/error.hpp"

namespace mscikdf {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

template <class Out>
Out decode_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::kParse, "hex string has odd length");
  }
  Out out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kParse,
                  "invalid hex digit at offset " + std::to_string(hi < 0 ? 2 * i : 2 * i + 1));
    }
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace

void secure_wipe(void* p, std::size_t n) noexcept {
  if (p != nullptr && n != 0) sodium_memzero(p, n);
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) { return decode_hex<Bytes>(hex); }

SecretBytes secret_from_hex(std::string_view hex) { return decode_hex<SecretBytes>(hex); }

bool equal_ct(ByteView a, ByteView b) noexcept {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kCodec: return "codec";
    case ErrorCode::kDecode: return "decode";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kEncoding: return "encoding";
    case ErrorCode::kUnregisteredSlot: return "unregistered-slot";
    case ErrorCode::kSlotMismatch: return "slot-mismatch";
    case ErrorCode::kDerivationFailure: return "derivation-failure";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace mscikdf
