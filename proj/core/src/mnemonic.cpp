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

#include "mscikdf/mnemonic.hpp"

#include <algorithm>

#include "access.hpp"
#include "mscikdf/error.hpp"
#include "primitives.hpp"

namespace mscikdf {

namespace detail {
// Generated from data/bip39-english.txt at configure time.
extern const std::array<std::string_view, 2048> kEnglishWordlist;
}  // namespace detail

namespace {

constexpr std::size_t kBitsPerWord = 11;

std::size_t words_for(std::size_t entropy_bytes) {
  return (entropy_bytes * 8 + checksum_bits(entropy_bytes)) / kBitsPerWord;
}

}  // namespace

RootEntropy::RootEntropy(ByteView bytes) {
  if (bytes.size() != kShortSize && bytes.size() != kLongSize) {
    throw Error(ErrorCode::kCodec, "root entropy must be 16 or 32 bytes, got " +
                                       std::to_string(bytes.size()));
  }
  bytes_.assign(bytes.begin(), bytes.end());
}

RootEntropy RootEntropy::generate(std::size_t bits) {
  if (bits != kShortSize * 8 && bits != kLongSize * 8) {
    throw Error(ErrorCode::kParameter, "root size must be 128 or 256 bits");
  }
  return RootEntropy(primitives::random_bytes(bits / 8));
}

bool operator==(const RootEntropy& a, const RootEntropy& b) noexcept {
  return equal_ct(a.bytes_, b.bytes_);
}

Mnemonic Mnemonic::from_string(std::string_view phrase) {
  Mnemonic m;
  m.phrase_.assign(phrase.begin(), phrase.end());
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = std::min(phrase.find(' ', start), phrase.size());
    if (end == start) {
      throw WordError(m.offsets_.size() + 1,
                      "empty word at position " + std::to_string(m.offsets_.size() + 1));
    }
    m.offsets_.emplace_back(start, end - start);
    if (end == phrase.size()) break;
    start = end + 1;
  }
  return m;
}

Mnemonic::Mnemonic(const std::vector<std::string_view>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i != 0) phrase_.push_back(' ');
    offsets_.emplace_back(phrase_.size(), words[i].size());
    phrase_.append(words[i].begin(), words[i].end());
  }
}

std::string_view Mnemonic::word(std::size_t i) const {
  const auto [off, len] = offsets_.at(i);
  return std::string_view(phrase_).substr(off, len);
}

std::vector<std::string_view> Mnemonic::words() const {
  std::vector<std::string_view> out;
  out.reserve(offsets_.size());
  for (std::size_t i = 0; i < offsets_.size(); ++i) out.push_back(word(i));
  return out;
}

std::span<const std::string_view, 2048> english_wordlist() noexcept {
  return detail::kEnglishWordlist;
}

std::optional<std::uint16_t> word_index(std::string_view word) noexcept {
  const auto& list = detail::kEnglishWordlist;
  const auto it = std::lower_bound(list.begin(), list.end(), word);
  if (it == list.end() || *it != word) return std::nullopt;
  return static_cast<std::uint16_t>(it - list.begin());
}

SecretString reveal_root_hex(const RootEntropy& root) {
  static constexpr char kHex[] = "0123456789abcdef";
  SecretString out;
  for (const std::uint8_t b : detail::RootAccess::bytes(root)) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

Mnemonic encode_root(const RootEntropy& root) {
  const ByteView entropy = detail::RootAccess::bytes(root);
  const auto digest = primitives::sha256({entropy});
  const std::size_t n_words = words_for(entropy.size());
  const std::size_t cs_bits = checksum_bits(entropy.size());

  // Bit i of entropy || checksum, MSB first.
  auto bit_at = [&](std::size_t i) -> unsigned {
    const std::size_t ent_bits = entropy.size() * 8;
    if (i < ent_bits) return (entropy[i / 8] >> (7 - i % 8)) & 1u;
    i -= ent_bits;
    return i < cs_bits ? (digest[i / 8] >> (7 - i % 8)) & 1u : 0u;
  };

  std::vector<std::string_view> words;
  words.reserve(n_words);
  for (std::size_t w = 0; w < n_words; ++w) {
    unsigned idx = 0;
    for (std::size_t b = 0; b < kBitsPerWord; ++b) idx = (idx << 1) | bit_at(w * kBitsPerWord + b);
    words.push_back(detail::kEnglishWordlist[idx]);
  }
  return Mnemonic(words);
}

RootEntropy decode_mnemonic(const Mnemonic& mnemonic) {
  const std::size_t n = mnemonic.size();
  if (n != words_for(RootEntropy::kShortSize) && n != words_for(RootEntropy::kLongSize)) {
    throw Error(ErrorCode::kDecode,
                "mnemonic must have 12 or 24 words, got " + std::to_string(n));
  }
  const std::size_t entropy_bytes =
      n == words_for(RootEntropy::kShortSize) ? RootEntropy::kShortSize : RootEntropy::kLongSize;
  const std::size_t ent_bits = entropy_bytes * 8;
  const std::size_t cs_bits = checksum_bits(entropy_bytes);

  SecretBytes entropy(entropy_bytes, 0);
  unsigned checksum = 0;
  for (std::size_t w = 0; w < n; ++w) {
    const auto idx = word_index(mnemonic.word(w));
    if (!idx) {
      throw WordError(w + 1, "unknown word at position " + std::to_string(w + 1));
    }
    for (std::size_t b = 0; b < kBitsPerWord; ++b) {
      const unsigned bit = (*idx >> (kBitsPerWord - 1 - b)) & 1u;
      const std::size_t pos = w * kBitsPerWord + b;
      if (pos < ent_bits) {
        entropy[pos / 8] |= static_cast<std::uint8_t>(bit << (7 - pos % 8));
      } else {
        checksum = (checksum << 1) | bit;
      }
    }
  }

  const auto digest = primitives::sha256({entropy});
  const unsigned expected = digest[0] >> (8 - cs_bits);
  if (checksum != expected) {
    throw Error(ErrorCode::kIntegrity, "mnemonic checksum mismatch");
  }
  return RootEntropy(entropy);
}

}  // namespace mscikdf
