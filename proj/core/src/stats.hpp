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

#ifndef MSCIKDF_SRC_STATS_HPP
#define MSCIKDF_SRC_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mscikdf/bytes.hpp"

namespace mscikdf::stats {

/// P[X >= x] for X ~ chi-square(df).
double chi2_sf(double x, double df);

/// Standard normal quantile.
double normal_quantile(double p);

/// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided critical |r| at significance `alpha` for n samples (Fisher z).
double correlation_critical(std::size_t n, double alpha);

/// Per-bit counters of ones over a stream of equal-length byte strings.
class BitBalance {
 public:
  explicit BitBalance(std::size_t bits) : ones_(bits, 0) {}

  void add(ByteView v);
  std::size_t samples() const noexcept { return samples_; }
  std::size_t bits() const noexcept { return ones_.size(); }
  std::uint64_t ones(std::size_t bit) const { return ones_[bit]; }

  /// Sum over bits of (ones - n/2)^2 / (n/4); chi-square with `bits` dof.
  double chi2() const;
  double p_value() const;

 private:
  std::vector<std::uint64_t> ones_;
  std::size_t samples_ = 0;
};

std::size_t hamming(ByteView a, ByteView b);
std::size_t common_prefix(ByteView a, ByteView b);
bool bit(ByteView v, std::size_t i);

}  // namespace mscikdf::stats

#endif  // MSCIKDF_SRC_STATS_HPP
