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

// mscikdf command-line tool.
//
// Exit codes: 0 success, 1 verification or test failure, 2 usage error,
// 3 pipeline or crypto error.

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "config.hpp"
#include "mscikdf/context.hpp"
#include "mscikdf/error.hpp"
#include "mscikdf/harness.hpp"
#include "mscikdf/kat.hpp"
#include "mscikdf/mnemonic.hpp"
#include "mscikdf/registry.hpp"
#include "mscikdf/slots.hpp"
#include "mscikdf/usage_state.hpp"
#include "secret_input.hpp"

namespace mscikdf::cli {
namespace {

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kPipeline = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs one pipeline stage, tagging library errors with the stage name.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw PipelineError(std::string(name) + ": " + e.what() + " [" +
                        std::string(error_code_name(e.code())) + "]");
  }
}

void warn(const std::string& msg) { std::cerr << "mscikdf: warning: " << msg << "\n"; }

struct PipelineOptions {
  std::optional<int> mnemonic_fd;
  std::optional<std::string> mnemonic_file;
  std::optional<int> passphrase_fd;
  std::optional<std::string> hardening;
  std::optional<std::uint32_t> memory_mib;
  std::optional<std::uint32_t> iterations;
  std::optional<std::uint32_t> parallelism;
  std::optional<std::string> format;
  std::optional<std::string> config;
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--mnemonic-fd", o.mnemonic_fd, "Read the mnemonic from this file descriptor");
  cmd->add_option("--mnemonic-file", o.mnemonic_file, "Read the mnemonic from this file");
  cmd->add_option("--passphrase-fd", o.passphrase_fd,
                  "Read the passphrase from this file descriptor (else $MSCIKDF_PASSPHRASE, "
                  "else a terminal prompt)");
  cmd->add_option("--hardening", o.hardening,
                  "Hardening profile: default, test-vectors or custom:m=<MiB>,t=<iters>,p=1");
  cmd->add_option("--memory-mib", o.memory_mib, "Override Argon2id memory (MiB)");
  cmd->add_option("--iterations", o.iterations, "Override Argon2id iterations");
  cmd->add_option("--parallelism", o.parallelism, "Override Argon2id lanes (only 1 is supported)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"hex", "json"}));
  cmd->add_option("--config", o.config, "JSON config file (else $MSCIKDF_CONFIG)");
}

struct Resolved {
  HardeningParams params;
  std::string format;
};

Resolved resolve(const PipelineOptions& o) {
  FileConfig cfg;
  std::optional<std::string> path = o.config;
  if (!path) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (path) {
    try {
      cfg = load_config(*path);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }

  Resolved r{cfg.hardening.value_or(HardeningParams::defaults()), cfg.format.value_or("hex")};
  if (o.format) r.format = *o.format;
  try {
    if (o.hardening) r.params = HardeningParams::from_profile(*o.hardening);
    if (o.memory_mib) r.params.memory_mib = *o.memory_mib;
    if (o.iterations) r.params.iterations = *o.iterations;
    if (o.parallelism) r.params.parallelism = *o.parallelism;
    r.params.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("hardening: ") + e.what());
  }
  return r;
}

UsageState open_state(const PipelineOptions& o, const HardeningParams& params) {
  SecretString phrase;
  SecretString pass;
  try {
    phrase = read_mnemonic({o.mnemonic_fd, o.mnemonic_file});
    pass = read_passphrase({o.passphrase_fd});
  } catch (const MissingSource& e) {
    throw UsageError(e.what());
  } catch (const SourceError& e) {
    throw PipelineError(std::string("input: ") + e.what());
  }
  if (pass.empty()) warn("empty passphrase");
  if (params.unsafe_for_production()) {
    warn("test-vectors hardening profile is for known-answer tests only");
  }

  const RootEntropy root = stage("decode", [&] { return decode_mnemonic(Mnemonic::from_string(phrase)); });
  const Passphrase passphrase = stage("passphrase", [&] { return Passphrase(std::string_view(pass)); });
  return stage("usage-state", [&] { return derive_usage_state(root, passphrase, params); });
}

// ---- root -----------------------------------------------------------------

struct RootNewOptions {
  std::size_t bits = 256;
  bool show_entropy = false;
  bool acknowledge = false;
};

int cmd_root_new(const RootNewOptions& o) {
  if (o.show_entropy && !o.acknowledge) {
    throw UsageError("--show-entropy requires --i-understand-this-reveals-the-root");
  }
  const RootEntropy root = stage("random", [&] { return RootEntropy::generate(o.bits); });
  const Mnemonic m = encode_root(root);
  std::cout << m.str() << "\n";
  if (o.show_entropy) std::cout << reveal_root_hex(root) << "\n";
  return kOk;
}

// ---- derive / fingerprint -------------------------------------------------

struct DeriveOptions {
  PipelineOptions pipeline;
  std::string context;
  bool reveal_secret = false;
};

int cmd_derive(const DeriveOptions& o) {
  const Resolved r = resolve(o.pipeline);
  const ContextDescriptor ctx = stage("context", [&] { return parse_context(o.context); });
  const UsageState state = open_state(o.pipeline, r.params);
  const DerivedMaterial m = stage("derive", [&] { return derive(state, ctx); });
  const KeyPairOut key = stage("finalize", [&] { return finalize(m, StateExpander(state)); });

  const std::string fp = fingerprint_hex(state.fingerprint());
  std::string secret_hex = o.reveal_secret ? to_hex(key.secret) : std::string();
  const std::optional<std::string> public_hex =
      key.public_key ? std::optional(to_hex(*key.public_key)) : std::nullopt;

  if (r.format == "json") {
    nlohmann::ordered_json j;
    j["hardening_profile"] = r.params.profile();
    j["context_text_form"] = format_context(ctx);
    j["expected_state_fingerprint_hex"] = fp;
    if (o.reveal_secret) j["expected_secret_hex"] = secret_hex;
    if (public_hex) j["expected_public_hex"] = *public_hex;
    std::string out = j.dump();
    std::cout << out << "\n";
    secure_wipe(out.data(), out.size());
  } else {
    std::cout << "fingerprint: " << fp << "\n";
    if (public_hex) std::cout << "public: " << *public_hex << "\n";
    if (o.reveal_secret) std::cout << "secret: " << secret_hex << "\n";
  }
  std::cout.flush();
  secure_wipe(secret_hex.data(), secret_hex.size());
  if (!public_hex && !o.reveal_secret) {
    std::cerr << "mscikdf: note: slot " << key.slot.name
              << " has no public key; pass --reveal-secret to print the secret\n";
  }
  return kOk;
}

int cmd_fingerprint(const PipelineOptions& o) {
  const Resolved r = resolve(o);
  const UsageState state = open_state(o, r.params);
  const std::string fp = fingerprint_hex(state.fingerprint());
  if (r.format == "json") {
    nlohmann::ordered_json j;
    j["hardening_profile"] = r.params.profile();
    j["expected_state_fingerprint_hex"] = fp;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << fp << "\n";
  }
  return kOk;
}

// ---- kat ------------------------------------------------------------------

struct KatGenerateOptions {
  std::string suite;
  std::optional<std::string> output;
};

int cmd_kat_generate(const KatGenerateOptions& o) {
  const KatSuite suite = parse_kat_suite(o.suite);
  const std::string text = kat_serialize(stage("kat", [&] { return kat_generate(suite); }));
  if (!o.output) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(*o.output, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw PipelineError("cannot write " + *o.output);
  return kOk;
}

struct KatVerifyOptions {
  std::string path;
  unsigned workers = 0;
  std::optional<std::string> hardening;
};

int cmd_kat_verify(const KatVerifyOptions& o) {
  mscikdf::KatVerifyOptions opts;
  opts.workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
  if (o.hardening) {
    try {
      opts.profile_override = HardeningParams::from_profile(*o.hardening);
    } catch (const Error& e) {
      throw UsageError(std::string("hardening: ") + e.what());
    }
  }

  std::ifstream in(o.path, std::ios::binary);
  if (!in) throw PipelineError("cannot read " + o.path + ": " + std::strerror(errno));
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw PipelineError("cannot read " + o.path);

  std::vector<KatRecord> records;
  try {
    records = kat_parse(buf.str());
  } catch (const RecordParseError& e) {
    std::cout << o.path << ":" << e.line() << ": " << e.what() << "\n";
    return kFailed;
  }

  const KatReport report = kat_verify(records, opts);
  if (report.profile_override) {
    std::cout << "profile override: " << *report.profile_override
              << " (records verified under this profile, not their own)\n";
  }
  for (const KatResult& r : report.results) {
    if (r.pass) continue;
    std::cout << o.path << ": record " << r.index + 1 << ": FAIL " << r.field << ": " << r.detail
              << "\n";
  }
  std::cout << o.path << ": " << report.results.size() << " records, "
            << report.results.size() - report.failures() << " passed, " << report.failures()
            << " failed\n";
  return report.all_passed() ? kOk : kFailed;
}

// ---- check ----------------------------------------------------------------

struct CheckOptions {
  bool fast = false;
  std::optional<std::string> negative_control;
  std::optional<std::string> json_path;
  std::optional<std::uint64_t> seed;
};

int cmd_check(const CheckOptions& o) {
  HarnessConfig config = o.fast ? HarnessConfig::fast() : HarnessConfig::standard();
  if (o.seed) config.seed = *o.seed;
  const DerivationEngine* engine = &reference_engine();
  if (o.negative_control) engine = fixtures::by_name(*o.negative_control);

  const SuiteReport report = stage("check", [&] { return run_suite(*engine, config); });
  std::cout << report.to_table();
  if (o.json_path) {
    std::ofstream out(*o.json_path, std::ios::trunc);
    out << report.to_json();
    out.close();
    if (!out) throw PipelineError("cannot write " + *o.json_path);
  }

  if (o.negative_control) {
    if (report.pass()) {
      std::cout << "negative control '" << *o.negative_control
                << "': harness did NOT detect the broken engine\n";
      return kFailed;
    }
    std::cout << "negative control '" << *o.negative_control
              << "': harness failed as expected\n";
    return kOk;
  }
  return report.pass() ? kOk : kFailed;
}

// ---- registry -------------------------------------------------------------

int cmd_registry(bool json) {
  const auto slots = SlotRegistry::builtin().slots();
  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SlotSpec& s : slots) {
      arr.push_back({{"algorithm_id", s.algorithm_id},
                     {"curve_id", s.curve_id},
                     {"name", s.name},
                     {"kind", slot_kind_name(s.kind)},
                     {"secret_length", s.secret_length},
                     {"expand_length", s.expand_length},
                     {"algorithm_token", s.algorithm_token},
                     {"curve_token", s.curve_token}});
    }
    std::cout << arr.dump(2) << "\n";
    return kOk;
  }
  std::printf("%-10s %-10s %-18s %-13s %7s %7s\n", "algorithm", "curve", "name", "kind", "secret",
              "expand");
  for (const SlotSpec& s : slots) {
    std::printf("0x%04x     0x%04x     %-18s %-13s %7zu %7zu\n", s.algorithm_id, s.curve_id,
                s.name.c_str(), std::string(slot_kind_name(s.kind)).c_str(), s.secret_length,
                s.expand_length);
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Single-root, context-isolated multi-algorithm key derivation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mscikdf 1.0.0");

  auto* root = app.add_subcommand("root", "Root entropy lifecycle");
  root->require_subcommand(1);
  RootNewOptions root_new;
  auto* root_new_cmd = root->add_subcommand("new", "Generate a fresh root and print its mnemonic");
  root_new_cmd->add_option("--bits", root_new.bits, "Root size in bits")
      ->check(CLI::IsMember({128, 256}))
      ->capture_default_str();
  root_new_cmd->add_flag("--show-entropy", root_new.show_entropy,
                         "Also print the raw entropy as hex");
  root_new_cmd->add_flag("--i-understand-this-reveals-the-root", root_new.acknowledge,
                         "Acknowledge that --show-entropy prints the root secret");

  DeriveOptions derive_opts;
  auto* derive_cmd = app.add_subcommand("derive", "Derive a key for one context");
  add_pipeline_options(derive_cmd, derive_opts.pipeline);
  derive_cmd->add_option("--context", derive_opts.context, "Context in text form")->required();
  derive_cmd->add_flag("--reveal-secret", derive_opts.reveal_secret, "Print the derived secret");

  PipelineOptions fp_opts;
  auto* fp_cmd = app.add_subcommand(
      "fingerprint", "Print the usage-state fingerprint (safe to record for bookkeeping)");
  add_pipeline_options(fp_cmd, fp_opts);

  auto* kat = app.add_subcommand("kat", "Known-answer vector files");
  kat->require_subcommand(1);
  KatGenerateOptions gen;
  auto* gen_cmd = kat->add_subcommand("generate", "Write a vector suite");
  gen_cmd->add_option("--suite", gen.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"core", "slots", "rotation"}));
  gen_cmd->add_option("-o,--output", gen.output, "Output path (default stdout)");
  KatVerifyOptions ver;
  auto* ver_cmd = kat->add_subcommand("verify", "Verify a vector file");
  ver_cmd->add_option("path", ver.path, "Vector file")->required();
  ver_cmd->add_option("--workers", ver.workers, "Worker threads (default: all cores)");
  ver_cmd->add_option("--hardening", ver.hardening,
                      "Verify every record under this profile instead of its own");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run the statistical property harness");
  check_cmd->add_flag("--fast", check.fast, "Reduced sample counts (smoke-level results)");
  check_cmd->add_option("--negative-control", check.negative_control,
                        "Run against a deliberately broken engine")
      ->check(CLI::IsMember({"omit-algorithm", "constant-salt"}));
  check_cmd->add_option("--json", check.json_path, "Also write the report as JSON");
  check_cmd->add_option("--seed", check.seed, "Harness seed");

  bool registry_json = false;
  auto* reg_cmd = app.add_subcommand("registry", "Print the algorithm slot table");
  reg_cmd->add_flag("--json", registry_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (root_new_cmd->parsed()) return cmd_root_new(root_new);
    if (derive_cmd->parsed()) return cmd_derive(derive_opts);
    if (fp_cmd->parsed()) return cmd_fingerprint(fp_opts);
    if (gen_cmd->parsed()) return cmd_kat_generate(gen);
    if (ver_cmd->parsed()) return cmd_kat_verify(ver);
    if (check_cmd->parsed()) return cmd_check(check);
    if (reg_cmd->parsed()) return cmd_registry(registry_json);
  } catch (const UsageError& e) {
    std::cerr << "mscikdf: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const PipelineError& e) {
    std::cerr << "mscikdf: " << e.what() << "\n";
    return kPipeline;
  } catch (const Error& e) {
    std::cerr << "mscikdf: " << e.what() << " [" << error_code_name(e.code()) << "]\n";
    return kPipeline;
  } catch (const std::exception& e) {
    std::cerr << "mscikdf: " << e.what() << "\n";
    return kPipeline;
  }
  return kUsage;
}

}  // namespace
}  // namespace mscikdf::cli

int main(int argc, char** argv) { return mscikdf::cli::run(argc, argv); }
