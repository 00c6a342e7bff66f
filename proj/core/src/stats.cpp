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

#include "stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace mscikdf::stats {

double chi2_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  const boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_quantile(double p) {
  const boost::math::normal_distribution<double> dist;
  return boost::math::quantile(dist, p);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double correlation_critical(std::size_t n, double alpha) {
  if (n <= 3) return 1.0;
  const double z = normal_quantile(1.0 - alpha / 2.0);
  return std::tanh(z / std::sqrt(static_cast<double>(n) - 3.0));
}

void BitBalance::add(ByteView v) {
  for (std::size_t i = 0; i < ones_.size() && i / 8 < v.size(); ++i) ones_[i] += bit(v, i);
  ++samples_;
}

double BitBalance::chi2() const {
  if (samples_ == 0) return 0.0;
  const double n = static_cast<double>(samples_);
  double sum = 0;
  for (const std::uint64_t o : ones_) {
    const double d = static_cast<double>(o) - n / 2.0;
    sum += d * d / (n / 4.0);
  }
  return sum;
}

double BitBalance::p_value() const { return chi2_sf(chi2(), static_cast<double>(ones_.size())); }

std::size_t hamming(ByteView a, ByteView b) {
  std::size_t d = 0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) d += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
  return d;
}

std::size_t common_prefix(ByteView a, ByteView b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

bool bit(ByteView v, std::size_t i) { return (v[i / 8] >> (7 - i % 8)) & 1u; }

}  // namespace mscikdf::stats
