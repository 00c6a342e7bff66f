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

// Statistical property harness.
//
// Each test measures an observable surrogate of an isolation property and
// reports every sub-check with its statistic and acceptance band. The
// cryptographic claims themselves (PRF security of HKDF, one-wayness of the
// Argon2id/extract step) are assumptions; the harness checks that nothing in
// the construction visibly breaks them.
//
// Property -> test:
//   context isolation             avalanche_test, next_bit_prediction_test
//   multi-curve unlinkability     cross_curve_correlation_test
//   secrecy across rotations      rotation_unlinkability_test,
//                                 state_independence_test
//   mnemonic substitution         mnemonic_substitution_test
//
// Significance is HarnessConfig::alpha, Bonferroni-corrected across the tests
// of a suite and across the sub-checks within each test. Randomness comes from
// fixed seeds, so every run is reproducible.

#ifndef MSCIKDF_HARNESS_HPP
#define MSCIKDF_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mscikdf/context.hpp"
#include "mscikdf/mnemonic.hpp"
#include "mscikdf/registry.hpp"
#include "mscikdf/usage_state.hpp"

namespace mscikdf {

/// The derivation pipeline under test. The reference engine is the library
/// itself; fixtures are deliberately broken variants used as negative
/// controls.
class DerivationEngine {
 public:
  virtual ~DerivationEngine() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual UsageState usage_state(const RootEntropy& root, const Passphrase& pass,
                                 const HardeningParams& params) const = 0;
  virtual DerivedMaterial derive(const UsageState& state, const ContextDescriptor& c,
                                 const SlotRegistry& registry) const = 0;
};

const DerivationEngine& reference_engine() noexcept;

namespace fixtures {
/// Expansion info omits the algorithm slot identifiers, so every slot shares
/// one output stream.
const DerivationEngine& omit_algorithm_engine() noexcept;
/// Password hardening with a constant salt and no root in the extract input:
/// the usage state depends on the passphrase alone.
const DerivationEngine& constant_salt_engine() noexcept;

/// "omit-algorithm" or "constant-salt"; nullptr otherwise.
const DerivationEngine* by_name(std::string_view name) noexcept;
}  // namespace fixtures

enum class Dimension { kVersion, kAlgorithm, kCurve, kPurpose, kIndex, kExtension };

std::string_view dimension_name(Dimension d) noexcept;
/// Throws Error(kPrecondition) for an unknown name.
Dimension parse_dimension(std::string_view name);
const std::vector<Dimension>& all_dimensions() noexcept;

/// One sub-check: passes iff lower <= statistic <= upper.
struct Check {
  std::string name;
  double statistic = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct IsolationReport {
  std::string test_name;
  std::size_t samples = 0;
  /// Governing statistic: the first failing check, or the first check.
  double statistic = 0.0;
  /// The bound that statistic is compared against.
  double threshold = 0.0;
  bool pass = false;
  bool applicable = true;
  std::vector<Check> checks;
};

struct HarnessConfig {
  std::uint64_t seed = 0x6d7363696b646631ULL;
  double alpha = 0.01;
  /// Bonferroni divisor across tests in one suite run.
  std::size_t suite_tests = 11;

  double avalanche_low = 0.45;
  double avalanche_high = 0.55;
  /// Used as is when the sample size makes it meaningful; otherwise the
  /// corrected critical value for the sample size is used instead.
  double max_byte_correlation = 0.1;
  /// Common prefixes of this many bytes or more count as a link.
  std::size_t link_prefix_bytes = 4;

  std::size_t avalanche_samples = 500;
  std::size_t avalanche_states = 4;
  std::size_t cross_curve_samples = 1000;
  std::size_t cross_curve_states = 4;
  std::size_t rotation_passphrases = 10;
  std::size_t rotation_contexts = 100;
  std::size_t substitution_trials = 1000;
  std::size_t next_bit_samples = 1000;
  std::size_t state_pairs = 2000;

  HardeningParams hardening = HardeningParams::test_vectors();
  /// Reduced sample counts; results are smoke-level only.
  bool smoke = false;

  static HarnessConfig standard();
  static HarnessConfig fast();

  /// alpha / (suite_tests * checks_in_test).
  double corrected_alpha(std::size_t checks_in_test) const noexcept;
};

using Perturbation = std::function<ContextDescriptor(const ContextDescriptor&, std::mt19937_64&)>;

/// Perturbs only `dimension` of `samples` random base contexts and measures
/// the Hamming distance of the derived secrets. Requires samples >= 100; a
/// perturbation that leaves the descriptor unchanged is a precondition error.
IsolationReport avalanche_test(const DerivationEngine& engine, Dimension dimension,
                               std::size_t samples,
                               const HarnessConfig& config = HarnessConfig::standard(),
                               const Perturbation& perturbation = {});

/// Same (state, purpose, index) across every slot pair of `registry`.
/// Not applicable with fewer than two slots. Requires samples >= 100.
IsolationReport cross_curve_correlation_test(
    const DerivationEngine& engine, std::size_t samples,
    const SlotRegistry& registry = SlotRegistry::builtin(),
    const HarnessConfig& config = HarnessConfig::standard());

/// Usage states for `passphrase_count` passphrases on one root; identical
/// contexts derived under each. Also re-derives every state in a shuffled,
/// interleaved order and requires byte-identical results. Requires
/// passphrase_count >= 2 and samples >= 100.
IsolationReport rotation_unlinkability_test(
    const DerivationEngine& engine, std::size_t passphrase_count, std::size_t samples,
    const HarnessConfig& config = HarnessConfig::standard());

/// Substitutes config.substitution_trials random valid mnemonics for the
/// victim's and derives with the victim's passphrase; any collision fails.
IsolationReport mnemonic_substitution_test(
    const DerivationEngine& engine, const HarnessConfig& config = HarnessConfig::standard());

/// Logistic-regression predictor of K_C2 bits from K_C1, for C1/C2 differing
/// in one dimension; held-out accuracy must stay at chance. Requires
/// samples >= 100 (per dimension).
IsolationReport next_bit_prediction_test(
    const DerivationEngine& engine, std::size_t samples,
    const HarnessConfig& config = HarnessConfig::standard());

/// Bit balance, per-byte correlation and Hamming band of state-root XORs over
/// `pairs` consecutive passphrases on one root. Requires pairs >= 200.
IsolationReport state_independence_test(
    const DerivationEngine& engine, std::size_t pairs,
    const HarnessConfig& config = HarnessConfig::standard());

struct SuiteReport {
  std::string engine;
  bool smoke = false;
  double alpha = 0.0;
  std::vector<IsolationReport> reports;

  bool pass() const noexcept;
  std::string to_json() const;
  std::string to_table() const;
};

SuiteReport run_suite(const DerivationEngine& engine,
                      const HarnessConfig& config = HarnessConfig::standard());

}  // namespace mscikdf

#endif  // MSCIKDF_HARNESS_HPP
