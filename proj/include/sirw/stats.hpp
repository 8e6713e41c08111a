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

#ifndef SIRW_STATS_HPP_
#define SIRW_STATS_HPP_

#include <span>
#include <vector>

namespace sirw {

// Pairwise (cascade) summation; the result depends only on the order of
// `values`, not on how they were produced.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);
// Sample variance with n - 1 denominator; 0 for fewer than two values.
double sample_variance(std::span<const double> values);
// Standard error of the mean.
double standard_error(std::span<const double> values);
double median(std::vector<double> values);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|, evaluated at
// every distinct sample value so that ties are handled exactly.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)) with
// c(alpha) = sqrt(-log(alpha / 2) / 2).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

}  // namespace sirw

#endif  // SIRW_STATS_HPP_
