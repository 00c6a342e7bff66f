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

#include "config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "mscikdf/error.hpp"

namespace mscikdf::cli {

namespace {

std::uint32_t field(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned()) {
    throw ConfigError(path + ": hardening." + key + " must be a non-negative integer");
  }
  return it->get<std::uint32_t>();
}

HardeningParams parse_hardening(const nlohmann::json& v, const std::string& path) {
  try {
    if (v.is_string()) return HardeningParams::from_profile(v.get<std::string>());
    if (v.is_object()) {
      for (const auto& [key, _] : v.items()) {
        if (key != "memory_mib" && key != "iterations" && key != "parallelism") {
          throw ConfigError(path + ": unknown key hardening." + key);
        }
      }
      HardeningParams p{field(v, "memory_mib", path), field(v, "iterations", path),
                        field(v, "parallelism", path)};
      p.validate();
      return p;
    }
  } catch (const Error& e) {
    throw ConfigError(path + ": hardening: " + e.what());
  }
  throw ConfigError(path + ": hardening must be a profile name or an object");
}

}  // namespace

FileConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(path + ": top level must be an object");

  FileConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "hardening") {
      cfg.hardening = parse_hardening(value, path);
    } else if (key == "format") {
      if (!value.is_string() || (value != "hex" && value != "json")) {
        throw ConfigError(path + ": format must be \"hex\" or \"json\"");
      }
      cfg.format = value.get<std::string>();
    } else {
      throw ConfigError(path + ": unknown key " + key);
    }
  }
  return cfg;
}

}  // namespace mscikdf::cli
