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

// Independent reference formulas used by the tests. Nothing here calls into
// the library.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kMHz = 2.0 * kPi * 1e6;
inline constexpr double kGHz = 2.0 * kPi * 1e9;

// J1(x) = sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
inline double bessel_j1_series(double x) {
  double term = x / 2.0;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= -(x / 2.0) * (x / 2.0) / (k * (k + 1.0));
    sum += term;
  }
  return sum;
}

inline Matrix sx() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix sy() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix sz() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// exp(-i H t) by scaling and squaring of a truncated Taylor series.
inline Matrix expm_taylor(const Matrix& h, double t) {
  const Matrix a = Complex(0, -t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.1) ++squarings;
  const Matrix b = a / std::pow(2.0, squarings);
  Matrix sum = Matrix::Identity(h.rows(), h.cols());
  Matrix term = sum;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Resonant Rabi transfer for a rectangular pulse with exchange rate w over t.
inline double rabi_transfer(double w, double t) { return std::pow(std::sin(w * t), 2); }

}  // namespace oracle
