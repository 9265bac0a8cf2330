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

#include <array>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sagate/operators.hpp"

namespace sagate::device {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// Cubic flux response f(eps) = c1 eps + c2 eps^2 + c3 eps^3 in rad/s.
struct FluxCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Static description of the two operating transmons. Frequencies and
/// couplings in rad/s, times in seconds. An infinite T1 or Tphi disables
/// that decoherence channel.
struct DeviceParams {
  std::string name = "custom";
  double omega1 = 0.0;
  double omega2 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double g = 0.0;
  FluxCoefficients flux;
  double t1_q1 = kInfiniteTime;
  double t1_q2 = kInfiniteTime;
  double tphi_q1 = kInfiniteTime;
  double tphi_q2 = kInfiniteTime;
  int levels = 2;

  /// Subsystem dimensions (levels, levels), ordered (Q1, Q2).
  std::vector<int> dims() const { return {levels, levels}; }
  int dim() const { return levels * levels; }

  /// Throws ConfigError naming the first violated field.
  void validate() const;
};

/// Returns a copy with every T1/Tphi set to infinity.
DeviceParams without_decoherence(DeviceParams dev);

/// Jump operators with rates absorbed into them, on the full Hilbert space.
struct CollapseSet {
  std::vector<operators::Operator> ops;
  bool empty() const { return ops.empty(); }
};

double flux_response(double eps, const FluxCoefficients& c);
double flux_response_derivative(double eps, const FluxCoefficients& c);
inline double flux_response(double eps, const DeviceParams& dev) { return flux_response(eps, dev.flux); }

/// Solves f(eps) = df by Newton iteration from df/c1 after checking that f is
/// monotone between 0 and the initial guess. Throws NumericalError
/// "response not invertible at requested shift" otherwise.
double invert_flux_response(double df, const FluxCoefficients& c);
inline double invert_flux_response(double df, const DeviceParams& dev) {
  return invert_flux_response(df, dev.flux);
}

/// Per transmon: sqrt(1/T1) a_i and sqrt(2/Tphi) n_i. Infinite times are skipped.
CollapseSet collapse_operators(const DeviceParams& dev);

/// Default cubic response: c1/2pi = 1 GHz per flux unit, c2/c1 = -0.1, c3/c1 = 0.02.
FluxCoefficients default_flux_coefficients();

/// Bundled presets: "swap-point" and "cz-point".
DeviceParams preset(const std::string& name);
std::vector<std::string> preset_names();

/// Configuration schema: GHz for qubit frequencies, MHz for anharmonicity,
/// coupling and flux coefficients (c_k / 2pi), microseconds for times (null
/// disables a channel). Unknown keys raise ConfigError.
DeviceParams device_from_json(const nlohmann::json& j);
nlohmann::json device_to_json(const DeviceParams& dev);
DeviceParams load_device(const std::string& path);

}  // namespace sagate::device
