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

// Privileged access to secret internals. Not installed; only the core
// library, the harness fixtures and white-box tests include this.

#ifndef MSCIKDF_SRC_ACCESS_HPP
#define MSCIKDF_SRC_ACCESS_HPP

#include "mscikdf/mnemonic.hpp"
#include "mscikdf/usage_state.hpp"

namespace mscikdf::detail {

struct RootAccess {
  static ByteView bytes(const RootEntropy& root) noexcept { return root.bytes_; }
};

struct PassphraseAccess {
  static ByteView bytes(const Passphrase& pass) noexcept { return pass.bytes_; }
};

struct UsageStateAccess {
  static UsageState make(SecretBytes state_root);
  static ByteView state_root(const UsageState& state) noexcept { return state.state_root_; }
  static ByteView prk(const UsageState& state) noexcept { return state.state_root_; }
};

}  // namespace mscikdf::detail

#endif  // MSCIKDF_SRC_ACCESS_HPP
