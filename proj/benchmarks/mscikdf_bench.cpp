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

#include <benchmark/benchmark.h>

#include "mscikdf/context.hpp"
#include "mscikdf/mnemonic.hpp"
#include "mscikdf/slots.hpp"
#include "mscikdf/usage_state.hpp"

namespace mscikdf {
namespace {

const RootEntropy& bench_root() {
  static const RootEntropy r(Bytes(32, 0x42));
  return r;
}

const UsageState& bench_state() {
  static const UsageState s =
      derive_usage_state(bench_root(), Passphrase("bench"), HardeningParams::test_vectors());
  return s;
}

ContextDescriptor context_for(std::uint16_t id) {
  ContextDescriptor c;
  c.algorithm_id = c.curve_id = id;
  c.purpose = "wallet/receive";
  c.index = 7;
  c.extensions.push_back({1, Bytes(16, 0xab)});
  return c;
}

void BM_UsageStateTestVectors(benchmark::State& st) {
  const Passphrase p("bench");
  for (auto _ : st) {
    benchmark::DoNotOptimize(derive_usage_state(bench_root(), p, HardeningParams::test_vectors()));
  }
}
BENCHMARK(BM_UsageStateTestVectors)->Unit(benchmark::kMillisecond);

void BM_UsageStateDefault(benchmark::State& st) {
  const Passphrase p("bench");
  for (auto _ : st) {
    benchmark::DoNotOptimize(derive_usage_state(bench_root(), p, HardeningParams::defaults()));
  }
}
BENCHMARK(BM_UsageStateDefault)->Unit(benchmark::kMillisecond)->Iterations(5);

void BM_MnemonicRoundTrip(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(decode_mnemonic(encode_root(bench_root())));
  }
}
BENCHMARK(BM_MnemonicRoundTrip);

void BM_EncodeContext(benchmark::State& st) {
  const ContextDescriptor c = context_for(slot_ids::kEd25519);
  for (auto _ : st) benchmark::DoNotOptimize(encode_context(c));
}
BENCHMARK(BM_EncodeContext);

void BM_FormatParseContext(benchmark::State& st) {
  const ContextDescriptor c = context_for(slot_ids::kSecp256k1);
  for (auto _ : st) benchmark::DoNotOptimize(parse_context(format_context(c)));
}
BENCHMARK(BM_FormatParseContext);

void BM_Derive(benchmark::State& st) {
  const ContextDescriptor c = context_for(slot_ids::kMlKem768);
  for (auto _ : st) benchmark::DoNotOptimize(derive(bench_state(), c));
}
BENCHMARK(BM_Derive);

// Full derive + finalize per builtin slot.
void BM_DeriveKey(benchmark::State& st) {
  const auto id = static_cast<std::uint16_t>(st.range(0));
  const ContextDescriptor c = context_for(id);
  st.SetLabel(SlotRegistry::builtin().at(id, id).name);
  for (auto _ : st) benchmark::DoNotOptimize(derive_key(bench_state(), c));
}
BENCHMARK(BM_DeriveKey)
    ->Arg(slot_ids::kEd25519)
    ->Arg(slot_ids::kX25519)
    ->Arg(slot_ids::kSecp256k1)
    ->Arg(slot_ids::kBls12381)
    ->Arg(slot_ids::kMlKem768)
    ->Arg(slot_ids::kMlDsa65);

}  // namespace
}  // namespace mscikdf

BENCHMARK_MAIN();
