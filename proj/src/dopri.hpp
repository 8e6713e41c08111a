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

#ifndef SIRW_SRC_DOPRI_HPP_
#define SIRW_SRC_DOPRI_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace sirw::detail {

// One Dormand-Prince 5(4) trial step.
//
// `rhs(t, y, dy)` returns false when the stage point is outside the domain
// of the right-hand side; the trial is then reported invalid.
template <std::size_t N>
struct DopriTrial {
  bool valid = false;
  std::array<double, N> y{};
  double error_norm = 0.0;  // <= 1 means within tolerance
};

template <std::size_t N, class Rhs>
DopriTrial<N> dopri_step(const Rhs& rhs, double t, const std::array<double, N>& y,
                         const std::array<double, N>& dy0, double h, double rel_tol,
                         double abs_tol) {
  using State = std::array<double, N>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  DopriTrial<N> out;
  State k2, k3, k4, k5, k6, k7, tmp;
  const State& k1 = dy0;

  auto stage = [&](double ct, State& k, auto&& combine) {
    for (std::size_t j = 0; j < N; ++j) tmp[j] = y[j] + h * combine(j);
    return rhs(t + ct * h, tmp, k);
  };
  if (!stage(c2, k2, [&](std::size_t j) { return a21 * k1[j]; })) return out;
  if (!stage(c3, k3, [&](std::size_t j) { return a31 * k1[j] + a32 * k2[j]; })) return out;
  if (!stage(c4, k4, [&](std::size_t j) { return a41 * k1[j] + a42 * k2[j] + a43 * k3[j]; }))
    return out;
  if (!stage(c5, k5, [&](std::size_t j) {
        return a51 * k1[j] + a52 * k2[j] + a53 * k3[j] + a54 * k4[j];
      }))
    return out;
  if (!stage(1.0, k6, [&](std::size_t j) {
        return a61 * k1[j] + a62 * k2[j] + a63 * k3[j] + a64 * k4[j] + a65 * k5[j];
      }))
    return out;
  for (std::size_t j = 0; j < N; ++j) {
    out.y[j] = y[j] + h * (b1 * k1[j] + b3 * k3[j] + b4 * k4[j] + b5 * k5[j] + b6 * k6[j]);
  }
  if (!rhs(t + h, out.y, k7)) return out;

  double norm = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double err =
        h * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
    const double scale = abs_tol + rel_tol * std::max(std::abs(y[j]), std::abs(out.y[j]));
    norm = std::max(norm, std::abs(err) / scale);
  }
  if (!std::isfinite(norm)) return out;
  out.error_norm = norm;
  out.valid = true;
  return out;
}

// Step-size factor after a trial with the given error norm.
inline double step_factor(double error_norm) {
  if (error_norm <= 0.0) return 5.0;
  return std::clamp(0.9 * std::pow(error_norm, -0.2), 0.2, 5.0);
}

// Cubic Hermite interpolation on [t0, t1].
inline double hermite(double t0, double t1, double y0, double y1, double d0, double d1,
                      double t) {
  const double h = t1 - t0;
  if (h <= 0.0) return y0;
  const double u = (t - t0) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * h * d1;
}

}  // namespace sirw::detail

#endif  // SIRW_SRC_DOPRI_HPP_
