// Copyright 2026 The sirw Authors.
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

#include "sirw/stats.hpp"

#include <algorithm>
#include <cmath>

namespace sirw {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const auto half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  std::vector<double> sq;
  sq.reserve(values.size());
  for (const double v : values) sq.push_back((v - m) * (v - m));
  return pairwise_sum(sq) / static_cast<double>(values.size() - 1);
}

double standard_error(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  return std::sqrt(sample_variance(values) / static_cast<double>(values.size()));
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return 0.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0;
  std::size_t ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == x) ++ia;
    while (ib < b.size() && b[ib] == x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return d;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

}  // namespace sirw
