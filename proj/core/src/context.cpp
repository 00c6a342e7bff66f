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

#include "mscikdf/context.hpp"

#include <charconv>
#include <cstdio>

#include "access.hpp"
#include "mscikdf/error.hpp"
#include "primitives.hpp"

namespace mscikdf {

namespace {

void put16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

[[noreturn]] void encoding_error(const std::string& what) {
  throw Error(ErrorCode::kEncoding, "context encoding: " + what);
}

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::kParse, "context text: " + what);
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates, out of range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xd800 && cp <= 0xdfff) || cp > 0x10ffff) {
      return false;
    }
    i += len;
  }
  return true;
}

bool unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string percent_encode(std::string_view s) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (unreserved(c)) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kDigits[c >> 4]);
      out.push_back(kDigits[c & 0x0f]);
    }
  }
  return out;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == '%') {
      if (i + 2 >= s.size()) parse_error("truncated percent escape");
      const int hi = hex_digit(s[i + 1]);
      const int lo = hex_digit(s[i + 2]);
      if (hi < 0 || lo < 0) parse_error("invalid percent escape in purpose");
      out.push_back(static_cast<char>((hi << 4) | lo));
      i += 2;
    } else if (unreserved(c)) {
      out.push_back(static_cast<char>(c));
    } else {
      parse_error("purpose character must be percent-encoded");
    }
  }
  return out;
}

// Decimal without sign or superfluous leading zeros.
template <class T>
T parse_decimal(std::string_view text, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      (text.size() > 1 && text[0] == '0')) {
    parse_error("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::string id_token(std::string_view token, std::uint16_t id) {
  if (!token.empty()) return std::string(token);
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04x", id);
  return buf;
}

std::uint16_t resolve_token(std::string_view token, std::optional<std::uint16_t> by_name,
                            std::string_view what) {
  if (token.starts_with("0x")) {
    const std::string_view digits = token.substr(2);
    std::uint16_t v = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
    if (digits.size() != 4 || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      parse_error("invalid " + std::string(what) + " id '" + std::string(token) + "'");
    }
    return v;
  }
  if (!by_name) {
    throw Error(ErrorCode::kUnregisteredSlot,
                "unknown " + std::string(what) + " '" + std::string(token) + "'");
  }
  return *by_name;
}

Bytes encode_unchecked(const ContextDescriptor& c) {
  if (c.version == 0) encoding_error("version must be at least 1");
  if (c.purpose.size() > ContextDescriptor::kMaxPurposeSize) {
    encoding_error("purpose exceeds 256 bytes");
  }
  if (!valid_utf8(c.purpose)) encoding_error("purpose is not valid UTF-8");
  if (c.extensions.size() > 0xffff) encoding_error("more than 65535 extensions");
  for (std::size_t i = 0; i < c.extensions.size(); ++i) {
    if (c.extensions[i].value.size() > ContextDescriptor::kMaxExtensionValueSize) {
      encoding_error("extension value exceeds 1024 bytes");
    }
    if (i > 0 && c.extensions[i].tag <= c.extensions[i - 1].tag) {
      encoding_error("extension tags must be strictly increasing");
    }
  }

  Bytes out;
  out.reserve(13 + c.purpose.size());
  out.push_back(c.version);
  put16(out, c.algorithm_id);
  put16(out, c.curve_id);
  put16(out, static_cast<std::uint16_t>(c.purpose.size()));
  out.insert(out.end(), c.purpose.begin(), c.purpose.end());
  put32(out, c.index);
  put16(out, static_cast<std::uint16_t>(c.extensions.size()));
  for (const ContextExtension& e : c.extensions) {
    put16(out, e.tag);
    put16(out, static_cast<std::uint16_t>(e.value.size()));
    out.insert(out.end(), e.value.begin(), e.value.end());
  }
  return out;
}

SecretBytes expand_context(const UsageState& state, const Bytes& encoding,
                           std::optional<std::uint8_t> retry_counter, std::size_t length) {
  const ByteView prk = detail::UsageStateAccess::prk(state);
  if (retry_counter) {
    const std::uint8_t suffix = *retry_counter;
    return primitives::hkdf_expand_sha512(
        prk, {as_bytes(kContextLabel), encoding, ByteView(&suffix, 1)}, length);
  }
  return primitives::hkdf_expand_sha512(prk, {as_bytes(kContextLabel), encoding}, length);
}

}  // namespace

Bytes encode_context(const ContextDescriptor& c, const SlotRegistry& registry) {
  if (registry.find(c.algorithm_id, c.curve_id) == nullptr) {
    encoding_error("unregistered (algorithm, curve) pair");
  }
  return encode_unchecked(c);
}

ContextDescriptor decode_context(ByteView enc) {
  std::size_t pos = 0;
  auto need = [&](std::size_t n) {
    if (enc.size() - pos < n) encoding_error("truncated encoding");
  };
  auto get8 = [&] {
    need(1);
    return enc[pos++];
  };
  auto get16 = [&] {
    need(2);
    const auto v = static_cast<std::uint16_t>((enc[pos] << 8) | enc[pos + 1]);
    pos += 2;
    return v;
  };
  auto get32 = [&] {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | enc[pos + i];
    pos += 4;
    return v;
  };

  ContextDescriptor c;
  c.version = get8();
  c.algorithm_id = get16();
  c.curve_id = get16();
  const std::uint16_t plen = get16();
  need(plen);
  c.purpose.assign(reinterpret_cast<const char*>(enc.data() + pos), plen);
  pos += plen;
  c.index = get32();
  const std::uint16_t count = get16();
  for (std::uint16_t i = 0; i < count; ++i) {
    ContextExtension e;
    e.tag = get16();
    const std::uint16_t vlen = get16();
    need(vlen);
    e.value.assign(enc.begin() + static_cast<std::ptrdiff_t>(pos),
                   enc.begin() + static_cast<std::ptrdiff_t>(pos + vlen));
    pos += vlen;
    c.extensions.push_back(std::move(e));
  }
  if (pos != enc.size()) encoding_error("trailing bytes after encoding");
  // Re-validate layout rules (purpose length, UTF-8, tag order).
  encode_unchecked(c);
  return c;
}

std::string format_context(const ContextDescriptor& c, const SlotRegistry& registry) {
  std::string out = "mscikdf:v" + std::to_string(c.version) + "/";
  out += id_token(registry.algorithm_token(c.algorithm_id), c.algorithm_id);
  out += "/";
  out += id_token(registry.curve_token(c.curve_id), c.curve_id);
  out += "/";
  out += percent_encode(c.purpose);
  out += "/";
  out += std::to_string(c.index);
  for (std::size_t i = 0; i < c.extensions.size(); ++i) {
    out += i == 0 ? "?" : "&";
    out += std::to_string(c.extensions[i].tag);
    out += "=";
    out += to_hex(c.extensions[i].value);
  }
  return out;
}

ContextDescriptor parse_context(std::string_view text, const SlotRegistry& registry) {
  constexpr std::string_view kScheme = "mscikdf:v";
  if (!text.starts_with(kScheme)) parse_error("must start with 'mscikdf:v'");
  text.remove_prefix(kScheme.size());

  std::string_view query;
  if (const std::size_t q = text.find('?'); q != std::string_view::npos) {
    query = text.substr(q + 1);
    text = text.substr(0, q);
    if (query.empty()) parse_error("empty extension list after '?'");
  }

  std::vector<std::string_view> parts;
  for (;;) {
    const std::size_t slash = text.find('/');
    parts.push_back(text.substr(0, slash));
    if (slash == std::string_view::npos) break;
    text.remove_prefix(slash + 1);
  }
  if (parts.size() != 5) {
    parse_error("expected v<version>/<algorithm>/<curve>/<purpose>/<index>");
  }

  ContextDescriptor c;
  const auto version = parse_decimal<unsigned>(parts[0], "version");
  if (version == 0 || version > 255) parse_error("version out of range");
  c.version = static_cast<std::uint8_t>(version);
  c.algorithm_id = resolve_token(parts[1], registry.algorithm_by_token(parts[1]), "algorithm");
  c.curve_id = resolve_token(parts[2], registry.curve_by_token(parts[2]), "curve");
  c.purpose = percent_decode(parts[3]);
  c.index = parse_decimal<std::uint32_t>(parts[4], "index");

  while (!query.empty()) {
    const std::size_t amp = query.find('&');
    const std::string_view item = query.substr(0, amp);
    query = amp == std::string_view::npos ? std::string_view{} : query.substr(amp + 1);
    if (amp != std::string_view::npos && query.empty()) parse_error("trailing '&'");
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) parse_error("extension must be tag=hexvalue");
    ContextExtension e;
    e.tag = parse_decimal<std::uint16_t>(item.substr(0, eq), "extension tag");
    try {
      e.value = from_hex(item.substr(eq + 1));
    } catch (const Error&) {
      parse_error("extension value must be hex");
    }
    c.extensions.push_back(std::move(e));
  }

  registry.at(c.algorithm_id, c.curve_id);
  try {
    encode_unchecked(c);
  } catch (const Error& e) {
    parse_error(e.what());
  }
  return c;
}

DerivedMaterial derive(const UsageState& state, const ContextDescriptor& c,
                       const SlotRegistry& registry) {
  const SlotSpec& slot = registry.at(c.algorithm_id, c.curve_id);
  const Bytes encoding = encode_unchecked(c);
  return DerivedMaterial{c, slot, expand_context(state, encoding, std::nullopt, slot.expand_length)};
}

std::vector<DerivedMaterial> derive_batch(const UsageState& state,
                                          std::span<const ContextDescriptor> contexts,
                                          const SlotRegistry& registry) {
  std::vector<DerivedMaterial> out;
  out.reserve(contexts.size());
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    try {
      out.push_back(derive(state, contexts[i], registry));
    } catch (const Error& e) {
      throw BatchError(i, e.code(), "batch element " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

SecretBytes StateExpander::expand(const ContextDescriptor& c, std::uint8_t retry_counter,
                                  std::size_t length) const {
  registry_.at(c.algorithm_id, c.curve_id);
  return expand_context(state_, encode_unchecked(c), retry_counter, length);
}

}  // namespace mscikdf
