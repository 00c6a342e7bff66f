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

// Intake of secrets (mnemonic, passphrase) from file descriptors, files,
// environment variables or the terminal. Secrets never come from argv.

#ifndef MSCIKDF_TOOLS_SECRET_INPUT_HPP
#define MSCIKDF_TOOLS_SECRET_INPUT_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "mscikdf/bytes.hpp"

namespace mscikdf::cli {

inline constexpr const char* kPassphraseEnv = "MSCIKDF_PASSPHRASE";
inline constexpr const char* kMnemonicEnv = "MSCIKDF_MNEMONIC";

/// No usable source for a required secret (exit code 2).
class MissingSource : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A source was named but could not be read (exit code 3).
class SourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MnemonicSource {
  std::optional<int> fd;
  std::optional<std::string> file;
};

struct PassphraseSource {
  std::optional<int> fd;
};

/// --mnemonic-fd > --mnemonic-file > MSCIKDF_MNEMONIC > stdin (piped) or a
/// no-echo terminal prompt. Leading and trailing whitespace is removed.
SecretString read_mnemonic(const MnemonicSource& source);

/// --passphrase-fd > MSCIKDF_PASSPHRASE > no-echo terminal prompt. One
/// trailing line ending is removed from fd input. With no source and a
/// non-interactive stdin this throws MissingSource.
SecretString read_passphrase(const PassphraseSource& source);

}  // namespace mscikdf::cli

#endif  // MSCIKDF_TOOLS_SECRET_INPUT_HPP
