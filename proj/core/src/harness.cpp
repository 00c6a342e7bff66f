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

#include "mscikdf/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>

#include <nlohmann/json.hpp>

#include "access.hpp"
#include "mscikdf/error.hpp"
#include "mscikdf/slots.hpp"
#include "stats.hpp"

namespace mscikdf {

namespace {

constexpr std::size_t kMinSamples = 100;
constexpr std::size_t kMinStatePairs = 200;
constexpr std::size_t kStateRootBits = UsageState::kStateRootSize * 8;
// Hamming band for 512-bit state roots: 256 +/- 48.
constexpr double kStateHammingBand = 48.0;

// Synthetic slots used to perturb algorithm_id / curve_id in isolation.
constexpr std::uint16_t kSynthAlgA = 0xa000;
constexpr std::uint16_t kSynthAlgB = 0xa001;
constexpr std::uint16_t kSynthCurveA = 0xc000;
constexpr std::uint16_t kSynthCurveB = 0xc001;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 rng_for(const HarnessConfig& config, std::string_view test, std::uint64_t extra = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : test) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return std::mt19937_64(splitmix(config.seed ^ splitmix(h ^ splitmix(extra))));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kPrecondition, what);
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

std::string random_token(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~";
  const std::size_t len = min_len + rng() % (max_len - min_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(kAlphabet[rng() % kAlphabet.size()]);
  return s;
}

RootEntropy random_root(std::mt19937_64& rng, std::size_t size = RootEntropy::kLongSize) {
  return RootEntropy(random_bytes(rng, size));
}

std::string random_passphrase(std::mt19937_64& rng, std::size_t i) {
  return "pass-" + std::to_string(i) + "-" + random_token(rng, 8, 16);
}

ContextDescriptor random_context(std::mt19937_64& rng, std::uint16_t alg, std::uint16_t curve) {
  ContextDescriptor c;
  c.algorithm_id = alg;
  c.curve_id = curve;
  c.purpose = random_token(rng, 1, 24);
  c.index = static_cast<std::uint32_t>(rng());
  const std::size_t n_ext = 1 + rng() % 3;
  std::uint16_t tag = static_cast<std::uint16_t>(rng() % 64);
  for (std::size_t i = 0; i < n_ext; ++i) {
    c.extensions.push_back({tag, random_bytes(rng, 1 + rng() % 16)});
    tag = static_cast<std::uint16_t>(tag + 1 + rng() % 64);
  }
  return c;
}

void flip_random_bit(std::uint8_t& byte, std::mt19937_64& rng) {
  byte ^= static_cast<std::uint8_t>(1u << (rng() % 8));
}

ContextDescriptor default_perturbation(Dimension d, const ContextDescriptor& base,
                                       std::mt19937_64& rng) {
  ContextDescriptor c = base;
  switch (d) {
    case Dimension::kVersion:
      c.version = static_cast<std::uint8_t>(2 + rng() % 254);
      break;
    case Dimension::kAlgorithm:
      c.algorithm_id = c.algorithm_id == kSynthAlgA ? kSynthAlgB : kSynthAlgA;
      break;
    case Dimension::kCurve:
      c.curve_id = c.curve_id == kSynthCurveA ? kSynthCurveB : kSynthCurveA;
      break;
    case Dimension::kPurpose: {
      // Low-bit flip keeps the purpose ASCII.
      auto& ch = c.purpose[rng() % c.purpose.size()];
      ch = static_cast<char>(ch ^ 1);
      break;
    }
    case Dimension::kIndex:
      c.index ^= 1u << (rng() % 32);
      break;
    case Dimension::kExtension: {
      auto& ext = c.extensions[rng() % c.extensions.size()];
      flip_random_bit(ext.value[rng() % ext.value.size()], rng);
      break;
    }
  }
  return c;
}

SlotRegistry avalanche_registry() {
  auto synth = [](std::uint16_t alg, std::uint16_t curve, std::string name) {
    return SlotSpec{alg, curve, 32, 32, SlotKind::kFieldScalar, std::move(name), "", ""};
  };
  return SlotRegistry::builtin()
      .with_slot(synth(kSynthAlgA, kSynthCurveA, "avalanche-base"))
      .with_slot(synth(kSynthAlgB, kSynthCurveA, "avalanche-algorithm"))
      .with_slot(synth(kSynthAlgA, kSynthCurveB, "avalanche-curve"));
}

std::vector<UsageState> random_states(const DerivationEngine& engine, std::mt19937_64& rng,
                                      std::size_t count, const HardeningParams& params) {
  std::vector<UsageState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const RootEntropy root = random_root(rng);
    out.push_back(engine.usage_state(root, Passphrase(random_passphrase(rng, i)), params));
  }
  return out;
}

Check make_check(std::string name, double statistic, double lower, double upper) {
  const bool pass = std::isfinite(statistic) && statistic >= lower && statistic <= upper;
  return Check{std::move(name), statistic, lower, upper, pass};
}

IsolationReport finish(std::string name, std::size_t samples, std::vector<Check> checks) {
  IsolationReport r;
  r.test_name = std::move(name);
  r.samples = samples;
  r.checks = std::move(checks);
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  const auto failing =
      std::find_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.pass; });
  const Check& gov = failing != r.checks.end() ? *failing : r.checks.front();
  r.statistic = gov.statistic;
  if (!(gov.statistic >= gov.lower)) {
    r.threshold = gov.lower;
  } else if (gov.statistic > gov.upper) {
    r.threshold = gov.upper;
  } else {
    r.threshold = gov.lower > 0.0 ? gov.lower : gov.upper;
  }
  return r;
}

// Full-batch logistic regression; returns held-out accuracy per target.
std::vector<double> logistic_accuracy(const std::vector<std::vector<double>>& x,
                                      const std::vector<std::vector<int>>& y,
                                      std::size_t n_train) {
  const std::size_t n = x.size();
  const std::size_t dims = x.front().size();
  const std::size_t targets = y.front().size();
  constexpr int kEpochs = 120;
  constexpr double kRate = 0.1;
  constexpr double kL2 = 1e-3;

  std::vector<double> acc(targets, 0.0);
  std::vector<double> w(dims), grad(dims);
  for (std::size_t t = 0; t < targets; ++t) {
    std::fill(w.begin(), w.end(), 0.0);
    for (int epoch = 0; epoch < kEpochs; ++epoch) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = 0; i < n_train; ++i) {
        double z = 0;
        for (std::size_t k = 0; k < dims; ++k) z += w[k] * x[i][k];
        const double err = 1.0 / (1.0 + std::exp(-z)) - y[i][t];
        for (std::size_t k = 0; k < dims; ++k) grad[k] += err * x[i][k];
      }
      for (std::size_t k = 0; k < dims; ++k) {
        w[k] -= kRate * (grad[k] / static_cast<double>(n_train) + kL2 * w[k]);
      }
    }
    std::size_t correct = 0;
    for (std::size_t i = n_train; i < n; ++i) {
      double z = 0;
      for (std::size_t k = 0; k < dims; ++k) z += w[k] * x[i][k];
      correct += static_cast<std::size_t>((z > 0.0 ? 1 : 0) == y[i][t]);
    }
    acc[t] = static_cast<double>(correct) / static_cast<double>(n - n_train);
  }
  return acc;
}

}  // namespace

std::string_view dimension_name(Dimension d) noexcept {
  switch (d) {
    case Dimension::kVersion: return "version";
    case Dimension::kAlgorithm: return "algorithm";
    case Dimension::kCurve: return "curve";
    case Dimension::kPurpose: return "purpose";
    case Dimension::kIndex: return "index";
    case Dimension::kExtension: return "extension";
  }
  return "unknown";
}

Dimension parse_dimension(std::string_view name) {
  for (const Dimension d : all_dimensions()) {
    if (dimension_name(d) == name) return d;
  }
  throw Error(ErrorCode::kPrecondition, "unknown context dimension '" + std::string(name) + "'");
}

const std::vector<Dimension>& all_dimensions() noexcept {
  static const std::vector<Dimension> dims = {Dimension::kVersion, Dimension::kAlgorithm,
                                              Dimension::kCurve,   Dimension::kPurpose,
                                              Dimension::kIndex,   Dimension::kExtension};
  return dims;
}

HarnessConfig HarnessConfig::standard() { return HarnessConfig{}; }

HarnessConfig HarnessConfig::fast() {
  HarnessConfig c;
  c.avalanche_samples = 100;
  c.avalanche_states = 2;
  c.cross_curve_samples = 100;
  c.cross_curve_states = 2;
  c.rotation_passphrases = 3;
  c.rotation_contexts = 100;
  c.substitution_trials = 100;
  c.next_bit_samples = 200;
  c.state_pairs = 200;
  c.smoke = true;
  return c;
}

double HarnessConfig::corrected_alpha(std::size_t checks_in_test) const noexcept {
  const double tests = static_cast<double>(std::max<std::size_t>(suite_tests, 1));
  const double checks = static_cast<double>(std::max<std::size_t>(checks_in_test, 1));
  return alpha / (tests * checks);
}

IsolationReport avalanche_test(const DerivationEngine& engine, Dimension dimension,
                               std::size_t samples, const HarnessConfig& config,
                               const Perturbation& perturbation) {
  require(samples >= kMinSamples, "avalanche_test needs at least 100 samples");
  auto rng = rng_for(config, "avalanche", static_cast<std::uint64_t>(dimension));
  const SlotRegistry registry = avalanche_registry();
  const auto states = random_states(engine, rng, std::max<std::size_t>(config.avalanche_states, 1),
                                    config.hardening);

  const bool slot_dim = dimension == Dimension::kAlgorithm || dimension == Dimension::kCurve;
  const std::uint16_t alg = slot_dim ? kSynthAlgA : slot_ids::kEd25519;
  const std::uint16_t curve = slot_dim ? kSynthCurveA : slot_ids::kEd25519;

  constexpr std::size_t kBits = 256;
  stats::BitBalance flips(kBits);
  double hamming_sum = 0;
  std::size_t identical = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const ContextDescriptor base = random_context(rng, alg, curve);
    const ContextDescriptor moved =
        perturbation ? perturbation(base, rng) : default_perturbation(dimension, base, rng);
    require(!(moved == base), "perturbation of '" + std::string(dimension_name(dimension)) +
                                  "' left the descriptor unchanged");
    const UsageState& state = states[i % states.size()];
    const DerivedMaterial a = engine.derive(state, base, registry);
    const DerivedMaterial b = engine.derive(state, moved, registry);
    Bytes x(kBits / 8);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = a.secret[k] ^ b.secret[k];
    flips.add(x);
    hamming_sum += static_cast<double>(stats::hamming(a.secret, b.secret));
    identical += static_cast<std::size_t>(equal_ct(a.secret, b.secret));
  }

  const double mean_fraction = hamming_sum / static_cast<double>(samples) / kBits;
  std::vector<Check> checks;
  checks.push_back(make_check("mean-hamming-fraction", mean_fraction, config.avalanche_low,
                              config.avalanche_high));
  checks.push_back(
      make_check("bit-flip-chi2-pvalue", flips.p_value(), config.corrected_alpha(1), 1.0));
  checks.push_back(make_check("identical-outputs", static_cast<double>(identical), 0, 0));
  return finish("avalanche/" + std::string(dimension_name(dimension)), samples, std::move(checks));
}

IsolationReport cross_curve_correlation_test(const DerivationEngine& engine, std::size_t samples,
                                             const SlotRegistry& registry,
                                             const HarnessConfig& config) {
  require(samples >= kMinSamples, "cross_curve_correlation_test needs at least 100 samples");
  const auto slots = registry.slots();
  if (slots.size() < 2) {
    IsolationReport r;
    r.test_name = "cross-curve";
    r.applicable = false;
    r.pass = true;
    return r;
  }

  auto rng = rng_for(config, "cross-curve");
  const auto states = random_states(
      engine, rng, std::max<std::size_t>(config.cross_curve_states, 1), config.hardening);

  struct PairStats {
    std::size_t a, b;
    stats::BitBalance balance;
    std::size_t linked = 0;
  };
  std::vector<PairStats> pairs;
  for (std::size_t a = 0; a < slots.size(); ++a) {
    for (std::size_t b = a + 1; b < slots.size(); ++b) {
      const std::size_t len = std::min(slots[a].expand_length, slots[b].expand_length);
      pairs.push_back({a, b, stats::BitBalance(len * 8)});
    }
  }

  std::vector<SecretBytes> secrets(slots.size());
  for (std::size_t i = 0; i < samples; ++i) {
    const UsageState& state = states[i % states.size()];
    const std::string purpose = random_token(rng, 1, 24);
    const auto index = static_cast<std::uint32_t>(rng());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      ContextDescriptor c;
      c.algorithm_id = slots[s].algorithm_id;
      c.curve_id = slots[s].curve_id;
      c.purpose = purpose;
      c.index = index;
      secrets[s] = engine.derive(state, c, registry).secret;
    }
    for (PairStats& p : pairs) {
      const SecretBytes& x = secrets[p.a];
      const SecretBytes& y = secrets[p.b];
      Bytes diff(p.balance.bits() / 8);
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = x[k] ^ y[k];
      p.balance.add(diff);
      p.linked += static_cast<std::size_t>(stats::common_prefix(x, y) >= config.link_prefix_bytes);
    }
  }

  double min_p = 1.0;
  std::size_t linked = 0;
  for (const PairStats& p : pairs) {
    min_p = std::min(min_p, p.balance.p_value());
    linked += p.linked;
  }
  std::vector<Check> checks;
  checks.push_back(make_check("min-pair-xor-chi2-pvalue", min_p,
                              config.corrected_alpha(pairs.size()), 1.0));
  checks.push_back(make_check("common-prefix-links", static_cast<double>(linked), 0, 0));
  return finish("cross-curve", samples, std::move(checks));
}

IsolationReport rotation_unlinkability_test(const DerivationEngine& engine,
                                            std::size_t passphrase_count, std::size_t samples,
                                            const HarnessConfig& config) {
  require(passphrase_count >= 2, "rotation_unlinkability_test needs at least 2 passphrases");
  require(samples >= kMinSamples, "rotation_unlinkability_test needs at least 100 contexts");
  auto rng = rng_for(config, "rotation");

  const RootEntropy root = random_root(rng);
  std::vector<std::string> passphrases;
  for (std::size_t i = 0; i < passphrase_count; ++i) passphrases.push_back(random_passphrase(rng, i));
  std::vector<ContextDescriptor> contexts;
  for (std::size_t j = 0; j < samples; ++j) {
    contexts.push_back(random_context(rng, slot_ids::kEd25519, slot_ids::kEd25519));
  }

  auto derive_all = [&](std::size_t i) {
    const UsageState state =
        engine.usage_state(root, Passphrase(passphrases[i]), config.hardening);
    std::vector<SecretBytes> out;
    out.reserve(samples);
    for (const auto& c : contexts) {
      out.push_back(engine.derive(state, c, SlotRegistry::builtin()).secret);
    }
    return std::make_pair(state.fingerprint(), std::move(out));
  };

  std::vector<Fingerprint> fingerprints;
  std::vector<std::vector<SecretBytes>> secrets;
  for (std::size_t i = 0; i < passphrase_count; ++i) {
    auto [fp, s] = derive_all(i);
    fingerprints.push_back(fp);
    secrets.push_back(std::move(s));
  }

  const std::size_t n_pairs = passphrase_count * (passphrase_count - 1) / 2;
  const double pair_alpha = config.corrected_alpha(n_pairs);
  const std::size_t pooled_n = samples * 32;
  const double corr_limit =
      std::max(config.max_byte_correlation, stats::correlation_critical(pooled_n, pair_alpha));

  double min_p = 1.0;
  double max_corr = 0.0;
  std::size_t linked = 0;
  std::size_t fp_collisions = 0;
  std::vector<double> xs(pooled_n), ys(pooled_n);
  for (std::size_t a = 0; a < passphrase_count; ++a) {
    for (std::size_t b = a + 1; b < passphrase_count; ++b) {
      fp_collisions += static_cast<std::size_t>(fingerprints[a] == fingerprints[b]);
      stats::BitBalance balance(256);
      for (std::size_t j = 0; j < samples; ++j) {
        const SecretBytes& x = secrets[a][j];
        const SecretBytes& y = secrets[b][j];
        Bytes diff(32);
        for (std::size_t k = 0; k < 32; ++k) {
          diff[k] = x[k] ^ y[k];
          xs[j * 32 + k] = x[k];
          ys[j * 32 + k] = y[k];
        }
        balance.add(diff);
        linked += static_cast<std::size_t>(stats::common_prefix(x, y) >= config.link_prefix_bytes);
      }
      min_p = std::min(min_p, balance.p_value());
      max_corr = std::max(max_corr, std::abs(stats::pearson(xs, ys)));
    }
  }

  // Coexistence: re-derive every state twice in a shuffled, interleaved order.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < passphrase_count; ++i) {
    order.push_back(i);
    order.push_back(i);
  }
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t mismatches = 0;
  for (const std::size_t i : order) {
    auto [fp, s] = derive_all(i);
    bool same = fp == fingerprints[i];
    for (std::size_t j = 0; same && j < samples; ++j) same = equal_ct(s[j], secrets[i][j]);
    mismatches += static_cast<std::size_t>(!same);
  }

  std::vector<Check> checks;
  checks.push_back(make_check("min-pair-xor-chi2-pvalue", min_p, pair_alpha, 1.0));
  checks.push_back(make_check("max-pair-byte-correlation", max_corr, 0.0, corr_limit));
  checks.push_back(make_check("common-prefix-links", static_cast<double>(linked), 0, 0));
  checks.push_back(make_check("fingerprint-collisions", static_cast<double>(fp_collisions), 0, 0));
  checks.push_back(make_check("coexistence-mismatches", static_cast<double>(mismatches), 0, 0));
  return finish("rotation-unlinkability", passphrase_count * samples, std::move(checks));
}

IsolationReport mnemonic_substitution_test(const DerivationEngine& engine,
                                           const HarnessConfig& config) {
  auto rng = rng_for(config, "mnemonic-substitution");
  const SlotRegistry& registry = SlotRegistry::builtin();

  const RootEntropy victim_root = random_root(rng);
  const std::string victim_pass = random_passphrase(rng, 0);
  const Mnemonic victim_mnemonic = encode_root(victim_root);

  auto contexts = [&] {
    std::vector<ContextDescriptor> out;
    for (const SlotSpec& s : registry.slots()) {
      ContextDescriptor c;
      c.algorithm_id = s.algorithm_id;
      c.curve_id = s.curve_id;
      c.purpose = "victim";
      out.push_back(c);
    }
    return out;
  }();

  struct Identity {
    UsageState state;
    std::vector<SecretBytes> secrets;
  };
  auto identity_of = [&](const Mnemonic& m) {
    const RootEntropy root = decode_mnemonic(m);
    UsageState state = engine.usage_state(root, Passphrase(victim_pass), config.hardening);
    std::vector<SecretBytes> secrets;
    for (const auto& c : contexts) secrets.push_back(engine.derive(state, c, registry).secret);
    return Identity{std::move(state), std::move(secrets)};
  };
  auto collides = [](const Identity& a, const Identity& b) {
    if (a.state.fingerprint() == b.state.fingerprint() || a.state == b.state) return true;
    for (std::size_t i = 0; i < a.secrets.size(); ++i) {
      if (equal_ct(a.secrets[i], b.secrets[i])) return true;
    }
    return false;
  };

  const Identity victim = identity_of(victim_mnemonic);

  std::size_t collisions = 0;
  for (std::size_t t = 0; t < config.substitution_trials; ++t) {
    const std::size_t size = (t % 2 == 0) ? RootEntropy::kLongSize : RootEntropy::kShortSize;
    const Mnemonic substitute = encode_root(random_root(rng, size));
    if (substitute == victim_mnemonic) continue;
    collisions += static_cast<std::size_t>(collides(identity_of(substitute), victim));
  }

  // Sanity inverse: re-entering the victim's own mnemonic reproduces the state.
  const Identity again = identity_of(Mnemonic::from_string(victim_mnemonic.str()));
  const bool reproduced = again.state == victim.state && !again.secrets.empty() &&
                          std::equal(again.secrets.begin(), again.secrets.end(),
                                     victim.secrets.begin(),
                                     [](const auto& a, const auto& b) { return equal_ct(a, b); });

  // Variants of the last word that keep its entropy bits and change only the
  // checksum bits must all be rejected at decode.
  const auto words = victim_mnemonic.words();
  const std::size_t cs = checksum_bits(victim_root.size());
  const std::uint16_t last = *word_index(words.back());
  std::size_t variants = 0, detected = 0;
  for (unsigned v = 0; v < (1u << cs); ++v) {
    const auto idx = static_cast<std::uint16_t>((last & ~((1u << cs) - 1)) | v);
    if (idx == last) continue;
    auto altered = words;
    altered.back() = english_wordlist()[idx];
    ++variants;
    try {
      decode_mnemonic(Mnemonic(altered));
    } catch (const Error& e) {
      detected += static_cast<std::size_t>(e.code() == ErrorCode::kIntegrity);
    }
  }

  std::vector<Check> checks;
  checks.push_back(make_check("state-collisions", static_cast<double>(collisions), 0, 0));
  checks.push_back(make_check("victim-reproduced", reproduced ? 1.0 : 0.0, 1, 1));
  checks.push_back(make_check("checksum-variants-detected-fraction",
                              static_cast<double>(detected) / static_cast<double>(variants), 1, 1));
  return finish("mnemonic-substitution", config.substitution_trials, std::move(checks));
}

IsolationReport next_bit_prediction_test(const DerivationEngine& engine, std::size_t samples,
                                         const HarnessConfig& config) {
  require(samples >= kMinSamples, "next_bit_prediction_test needs at least 100 samples");
  auto rng = rng_for(config, "next-bit");
  const SlotRegistry& registry = SlotRegistry::builtin();
  const auto states = random_states(engine, rng, 2, config.hardening);

  // The algorithm dimension moves between two builtin slots here so that the
  // test exercises the registry's real streams.
  const std::array<Dimension, 5> dims = {Dimension::kAlgorithm, Dimension::kPurpose,
                                         Dimension::kIndex, Dimension::kExtension,
                                         Dimension::kVersion};
  constexpr std::size_t kTargets = 8;
  const std::size_t n_train = samples / 2;
  const std::size_t n_test = samples - n_train;
  const double alpha = config.corrected_alpha(dims.size() * kTargets);
  const double bound =
      0.5 + stats::normal_quantile(1.0 - alpha) * 0.5 / std::sqrt(static_cast<double>(n_test));

  std::vector<Check> checks;
  for (const Dimension d : dims) {
    std::vector<std::vector<double>> x;
    std::vector<std::vector<int>> y;
    for (std::size_t i = 0; i < samples; ++i) {
      ContextDescriptor base = random_context(rng, slot_ids::kEd25519, slot_ids::kEd25519);
      ContextDescriptor moved = base;
      if (d == Dimension::kAlgorithm) {
        moved.algorithm_id = moved.curve_id = slot_ids::kX25519;
      } else {
        moved = default_perturbation(d, base, rng);
      }
      const UsageState& state = states[i % states.size()];
      const SecretBytes k1 = engine.derive(state, base, registry).secret;
      const SecretBytes k2 = engine.derive(state, moved, registry).secret;
      std::vector<double> row(257, 1.0);
      for (std::size_t b = 0; b < 256; ++b) row[b] = stats::bit(k1, b) ? 1.0 : -1.0;
      std::vector<int> target(kTargets);
      for (std::size_t b = 0; b < kTargets; ++b) target[b] = stats::bit(k2, b) ? 1 : 0;
      x.push_back(std::move(row));
      y.push_back(std::move(target));
    }
    const auto acc = logistic_accuracy(x, y, n_train);
    checks.push_back(make_check("max-accuracy/" + std::string(dimension_name(d)),
                                *std::max_element(acc.begin(), acc.end()), 0.0, bound));
  }
  return finish("next-bit-prediction", samples * dims.size(), std::move(checks));
}

IsolationReport state_independence_test(const DerivationEngine& engine, std::size_t pairs,
                                        const HarnessConfig& config) {
  require(pairs >= kMinStatePairs, "state_independence_test needs at least 200 pairs");
  auto rng = rng_for(config, "state-independence");
  const RootEntropy root = random_root(rng);

  std::vector<SecretBytes> roots;
  roots.reserve(pairs + 1);
  for (std::size_t i = 0; i <= pairs; ++i) {
    const UsageState s =
        engine.usage_state(root, Passphrase(random_passphrase(rng, i)), config.hardening);
    const ByteView r = detail::UsageStateAccess::state_root(s);
    roots.emplace_back(r.begin(), r.end());
  }

  const double band = std::max(
      kStateHammingBand, stats::normal_quantile(1.0 - config.corrected_alpha(pairs) / 2.0) *
                             std::sqrt(kStateRootBits / 4.0));
  const double corr_alpha = config.corrected_alpha(UsageState::kStateRootSize);
  const double corr_limit =
      std::max(config.max_byte_correlation, stats::correlation_critical(pairs, corr_alpha));

  stats::BitBalance balance(kStateRootBits);
  std::size_t band_violations = 0;
  double hamming_sum = 0;
  std::vector<std::vector<double>> xs(UsageState::kStateRootSize), ys(UsageState::kStateRootSize);
  for (std::size_t i = 0; i < pairs; ++i) {
    const SecretBytes& a = roots[i];
    const SecretBytes& b = roots[i + 1];
    Bytes diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      diff[k] = a[k] ^ b[k];
      xs[k].push_back(a[k]);
      ys[k].push_back(b[k]);
    }
    balance.add(diff);
    const double h = static_cast<double>(stats::hamming(a, b));
    hamming_sum += h;
    band_violations += static_cast<std::size_t>(std::abs(h - kStateRootBits / 2.0) > band);
  }
  double max_corr = 0;
  for (std::size_t k = 0; k < UsageState::kStateRootSize; ++k) {
    max_corr = std::max(max_corr, std::abs(stats::pearson(xs[k], ys[k])));
  }

  std::vector<Check> checks;
  checks.push_back(make_check("xor-bit-chi2-pvalue", balance.p_value(), config.corrected_alpha(1), 1.0));
  checks.push_back(make_check("max-byte-correlation", max_corr, 0.0, corr_limit));
  checks.push_back(make_check("mean-hamming-fraction",
                              hamming_sum / static_cast<double>(pairs) / kStateRootBits,
                              config.avalanche_low, config.avalanche_high));
  checks.push_back(make_check("hamming-band-violations", static_cast<double>(band_violations), 0, 0));
  return finish("state-independence", pairs, std::move(checks));
}

bool SuiteReport::pass() const noexcept {
  return std::all_of(reports.begin(), reports.end(), [](const IsolationReport& r) { return r.pass; });
}

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["engine"] = engine;
  j["smoke"] = smoke;
  j["alpha"] = alpha;
  j["pass"] = pass();
  j["tests"] = nlohmann::ordered_json::array();
  for (const IsolationReport& r : reports) {
    nlohmann::ordered_json t;
    t["test_name"] = r.test_name;
    t["samples"] = r.samples;
    t["statistic"] = r.statistic;
    t["threshold"] = r.threshold;
    t["pass"] = r.pass;
    t["applicable"] = r.applicable;
    t["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : r.checks) {
      t["checks"].push_back({{"name", c.name},
                             {"statistic", c.statistic},
                             {"lower", c.lower},
                             {"upper", c.upper},
                             {"pass", c.pass}});
    }
    j["tests"].push_back(std::move(t));
  }
  return j.dump(2) + "\n";
}

std::string SuiteReport::to_table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "engine: %s%s  alpha: %g (Bonferroni-corrected per check)\n",
                engine.c_str(), smoke ? "  [smoke-level sample counts]" : "", alpha);
  out += line;
  std::snprintf(line, sizeof line, "%-26s %8s %14s %14s  %s\n", "test", "samples", "statistic",
                "threshold", "result");
  out += line;
  for (const IsolationReport& r : reports) {
    std::snprintf(line, sizeof line, "%-26s %8zu %14.6g %14.6g  %s\n", r.test_name.c_str(),
                  r.samples, r.statistic, r.threshold,
                  !r.applicable ? "n/a" : (r.pass ? "PASS" : "FAIL"));
    out += line;
    for (const Check& c : r.checks) {
      if (c.pass) continue;
      std::snprintf(line, sizeof line, "    failed check %s: %.6g not in [%.6g, %.6g]\n",
                    c.name.c_str(), c.statistic, c.lower, c.upper);
      out += line;
    }
  }
  out += pass() ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

SuiteReport run_suite(const DerivationEngine& engine, const HarnessConfig& config) {
  SuiteReport suite;
  suite.engine = std::string(engine.name());
  suite.smoke = config.smoke;
  suite.alpha = config.alpha;
  for (const Dimension d : all_dimensions()) {
    suite.reports.push_back(avalanche_test(engine, d, config.avalanche_samples, config));
  }
  suite.reports.push_back(cross_curve_correlation_test(engine, config.cross_curve_samples,
                                                       SlotRegistry::builtin(), config));
  suite.reports.push_back(rotation_unlinkability_test(engine, config.rotation_passphrases,
                                                      config.rotation_contexts, config));
  suite.reports.push_back(mnemonic_substitution_test(engine, config));
  suite.reports.push_back(next_bit_prediction_test(engine, config.next_bit_samples, config));
  suite.reports.push_back(state_independence_test(engine, config.state_pairs, config));
  return suite;
}

}  // namespace mscikdf
