// Copyright 2026 The sagate Authors
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

#include "sagate/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sagate::numeric {

namespace {

// Locates t on the grid: returns the left node and the fractional offset.
std::pair<std::size_t, double> locate(std::size_t n, double dt, double t) {
  if (n < 2 || t <= 0.0) return {0, 0.0};
  const double x = t / dt;
  auto i = static_cast<std::size_t>(std::floor(x));
  if (i >= n - 1) return {n - 2, 1.0};
  return {i, x - static_cast<double>(i)};
}

}  // namespace

std::vector<double> gradient(std::span<const double> y, double dt) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / dt;
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt);
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * dt);
  return d;
}

std::vector<double> cumulative_trapezoid(std::span<const double> y, double dt) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t i = 1; i < y.size(); ++i) out[i] = out[i - 1] + 0.5 * dt * (y[i - 1] + y[i]);
  return out;
}

double interp_linear(std::span<const double> y, double dt, double t) {
  if (y.empty()) return 0.0;
  if (y.size() == 1) return y[0];
  auto [i, u] = locate(y.size(), dt, t);
  return (1.0 - u) * y[i] + u * y[i + 1];
}

double interp_cubic(std::span<const double> y, double dt, double t) {
  const std::size_t n = y.size();
  if (n < 4) return interp_linear(y, dt, t);
  auto [i, u] = locate(n, dt, t);
  const double p1 = y[i];
  const double p2 = y[i + 1];
  const double p0 = i > 0 ? y[i - 1] : 2.0 * p1 - p2;
  const double p3 = i + 2 < n ? y[i + 2] : 2.0 * p2 - p1;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return 0.5 * (2.0 * p1 + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

double interp_hermite(std::span<const double> y, std::span<const double> dy, double dt, double t) {
  const std::size_t n = y.size();
  if (n < 2) return n ? y[0] : 0.0;
  auto [i, u] = locate(n, dt, t);
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * y[i] + h10 * dt * dy[i] + h01 * y[i + 1] + h11 * dt * dy[i + 1];
}

double wrap_angle(double x) {
  constexpr double pi = std::numbers::pi;
  x = std::fmod(x + pi, 2.0 * pi);
  if (x <= 0.0) x += 2.0 * pi;
  return x - pi;
}

}  // namespace sagate::numeric
