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

#ifndef MSCIKDF_BYTES_HPP
#define MSCIKDF_BYTES_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mscikdf {

/// Overwrites `n` bytes at `p` in a way the optimizer cannot elide.
void secure_wipe(void* p, std::size_t n) noexcept;

/// Allocator that wipes storage before handing it back to the heap.
template <class T>
struct ZeroizingAllocator {
  using value_type = T;

  ZeroizingAllocator() noexcept = default;
  template <class U>
  ZeroizingAllocator(const ZeroizingAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return std::allocator<T>{}.allocate(n); }
  void deallocate(T* p, std::size_t n) noexcept {
    secure_wipe(p, n * sizeof(T));
    std::allocator<T>{}.deallocate(p, n);
  }

  template <class U>
  bool operator==(const ZeroizingAllocator<U>&) const noexcept {
    return true;
  }
};

using Bytes = std::vector<std::uint8_t>;
using SecretBytes = std::vector<std::uint8_t, ZeroizingAllocator<std::uint8_t>>;
using SecretString =
    std::basic_string<char, std::char_traits<char>, ZeroizingAllocator<char>>;

using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Lowercase hex.
std::string to_hex(ByteView bytes);

/// Accepts upper or lower case; throws ParseError on odd length or bad digit.
Bytes from_hex(std::string_view hex);
SecretBytes secret_from_hex(std::string_view hex);

/// Constant-time comparison; sizes are not secret.
bool equal_ct(ByteView a, ByteView b) noexcept;

}  // namespace mscikdf

#endif  // MSCIKDF_BYTES_HPP
