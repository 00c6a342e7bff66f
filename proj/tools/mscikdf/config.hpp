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

// Optional JSON config file. Documented keys only:
//
//   {
//     "hardening": "default" | "test-vectors"
//                  | {"memory_mib": 64, "iterations": 3, "parallelism": 1},
//     "format": "hex" | "json"
//   }

#ifndef MSCIKDF_TOOLS_CONFIG_HPP
#define MSCIKDF_TOOLS_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "mscikdf/usage_state.hpp"

namespace mscikdf::cli {

inline constexpr const char* kConfigEnv = "MSCIKDF_CONFIG";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FileConfig {
  std::optional<HardeningParams> hardening;
  std::optional<std::string> format;
};

/// Throws ConfigError naming the path for I/O, syntax and unknown keys.
FileConfig load_config(const std::string& path);

}  // namespace mscikdf::cli

#endif  // MSCIKDF_TOOLS_CONFIG_HPP
