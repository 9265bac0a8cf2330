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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sagate::numeric {

/// Derivative of uniformly sampled data: centered differences inside,
/// second-order one-sided differences at both ends.
std::vector<double> gradient(std::span<const double> y, double dt);

/// Cumulative trapezoidal integral starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> y, double dt);

/// Linear interpolation on a uniform grid starting at t = 0; clamps outside.
double interp_linear(std::span<const double> y, double dt, double t);

/// Catmull-Rom cubic interpolation on a uniform grid starting at t = 0.
double interp_cubic(std::span<const double> y, double dt, double t);

/// Cubic Hermite interpolation using samples and their derivatives.
double interp_hermite(std::span<const double> y, std::span<const double> dy, double dt, double t);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

}  // namespace sagate::numeric
