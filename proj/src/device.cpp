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

#include "sagate/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "sagate/error.hpp"

namespace sagate::device {

namespace {

constexpr double kGHz = kTwoPi * 1e9;
constexpr double kMHz = kTwoPi * 1e6;
constexpr double kMicrosecond = 1e-6;

void require(bool ok, const std::string& field, const std::string& bound) {
  if (!ok) throw ConfigError("device parameter '" + field + "' violates bound: " + bound);
}

// f'(x)/c1 on [lo, hi] is a quadratic; its minimum sits at an endpoint or the vertex.
double min_normalized_slope(double lo, double hi, const FluxCoefficients& c) {
  auto slope = [&](double x) { return flux_response_derivative(x, c) / c.c1; };
  double m = std::min(slope(lo), slope(hi));
  if (c.c3 != 0.0) {
    const double vertex = -c.c2 / (3.0 * c.c3);
    if (vertex > lo && vertex < hi) m = std::min(m, slope(vertex));
  }
  return m;
}

double time_from_json(const nlohmann::json& v) {
  if (v.is_null()) return kInfiniteTime;
  return v.get<double>() * kMicrosecond;
}

nlohmann::json time_to_json(double t) {
  if (std::isinf(t)) return nullptr;
  return t / kMicrosecond;
}

}  // namespace

void DeviceParams::validate() const {
  require(std::isfinite(omega1) && omega1 > 0.0, "omega1", "> 0");
  require(std::isfinite(omega2) && omega2 > 0.0, "omega2", "> 0");
  require(omega1 != omega2, "omega1", "!= omega2");
  require(std::isfinite(eta1) && std::isfinite(eta2), "eta", "finite");
  require(std::isfinite(g) && g > 0.0, "g", "> 0");
  require(std::isfinite(flux.c1) && flux.c1 != 0.0, "flux_coeffs[0]", "!= 0");
  require(std::isfinite(flux.c2) && std::isfinite(flux.c3), "flux_coeffs", "finite");
  require(t1_q1 > 0.0, "t1_q1", "> 0");
  require(t1_q2 > 0.0, "t1_q2", "> 0");
  require(tphi_q1 > 0.0, "tphi_q1", "> 0");
  require(tphi_q2 > 0.0, "tphi_q2", "> 0");
  require(levels == 2 || levels == 3, "levels", "in {2, 3}");
}

DeviceParams without_decoherence(DeviceParams dev) {
  dev.t1_q1 = dev.t1_q2 = dev.tphi_q1 = dev.tphi_q2 = kInfiniteTime;
  return dev;
}

double flux_response(double eps, const FluxCoefficients& c) {
  return eps * (c.c1 + eps * (c.c2 + eps * c.c3));
}

double flux_response_derivative(double eps, const FluxCoefficients& c) {
  return c.c1 + eps * (2.0 * c.c2 + eps * 3.0 * c.c3);
}

double invert_flux_response(double df, const FluxCoefficients& c) {
  if (c.c1 == 0.0) throw NumericalError("response not invertible at requested shift");
  if (df == 0.0) return 0.0;
  const double tol = 1e-9 * std::abs(c.c1);
  double eps = df / c.c1;
  for (int iter = 0; iter < 50; ++iter) {
    const double lo = std::min(0.0, eps);
    const double hi = std::max(0.0, eps);
    if (min_normalized_slope(lo, hi, c) <= 0.0)
      throw NumericalError("response not invertible at requested shift");
    const double residual = flux_response(eps, c) - df;
    if (std::abs(residual) <= tol) return eps;
    eps -= residual / flux_response_derivative(eps, c);
  }
  if (std::abs(flux_response(eps, c) - df) <= tol) return eps;
  throw NumericalError("response not invertible at requested shift");
}

CollapseSet collapse_operators(const DeviceParams& dev) {
  using operators::embed;
  CollapseSet set;
  const auto dims = dev.dims();
  const operators::Operator a = operators::lowering(dev.levels);
  const operators::Operator n = operators::number(dev.levels);
  const double t1[2] = {dev.t1_q1, dev.t1_q2};
  const double tphi[2] = {dev.tphi_q1, dev.tphi_q2};
  for (int site = 0; site < 2; ++site) {
    if (std::isfinite(t1[site])) set.ops.push_back(std::sqrt(1.0 / t1[site]) * embed(a, site, dims));
    if (std::isfinite(tphi[site]))
      set.ops.push_back(std::sqrt(2.0 / tphi[site]) * embed(n, site, dims));
  }
  return set;
}

FluxCoefficients default_flux_coefficients() {
  const double c1 = 1.0 * kGHz;
  return {c1, -0.1 * c1, 0.02 * c1};
}

DeviceParams preset(const std::string& name) {
  DeviceParams dev;
  dev.name = name;
  dev.omega2 = 5.9498 * kGHz;
  dev.eta1 = -299.2 * kMHz;
  dev.eta2 = -299.2 * kMHz;
  dev.flux = default_flux_coefficients();
  dev.t1_q1 = 4.06 * kMicrosecond;
  dev.tphi_q1 = 0.620 * kMicrosecond;
  dev.t1_q2 = 3.98 * kMicrosecond;
  dev.tphi_q2 = 6.1 * kMicrosecond;
  if (name == "swap-point") {
    dev.omega1 = 6.1567 * kGHz;
    dev.g = 6.26 * kMHz;
    dev.levels = 2;
  } else if (name == "cz-point") {
    dev.omega1 = 6.4873 * kGHz;
    // sqrt(2) g / 2pi = 9.14 MHz on the |11> <-> |20> transition.
    dev.g = 9.14 / std::sqrt(2.0) * kMHz;
    dev.levels = 3;
  } else {
    throw ConfigError("unknown device preset '" + name + "'");
  }
  return dev;
}

std::vector<std::string> preset_names() { return {"swap-point", "cz-point"}; }

DeviceParams device_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {"name",   "omega1_ghz", "omega2_ghz", "eta1_mhz",
                                              "eta2_mhz", "g_mhz",    "flux_coeffs_mhz", "t1_us",
                                              "tphi_us", "levels"};
  if (!j.is_object()) throw ConfigError("device config must be a JSON object");
  std::string unknown;
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  if (!unknown.empty()) throw ConfigError("unknown device keys: " + unknown);

  try {
    DeviceParams dev;
    dev.name = j.value("name", std::string("custom"));
    dev.omega1 = j.at("omega1_ghz").get<double>() * kGHz;
    dev.omega2 = j.at("omega2_ghz").get<double>() * kGHz;
    dev.eta1 = j.value("eta1_mhz", 0.0) * kMHz;
    dev.eta2 = j.value("eta2_mhz", 0.0) * kMHz;
    dev.g = j.at("g_mhz").get<double>() * kMHz;
    if (j.contains("flux_coeffs_mhz")) {
      const auto& c = j.at("flux_coeffs_mhz");
      if (!c.is_array() || c.size() != 3) throw ConfigError("flux_coeffs_mhz must hold three numbers");
      dev.flux = {c[0].get<double>() * kMHz, c[1].get<double>() * kMHz, c[2].get<double>() * kMHz};
    } else {
      dev.flux = default_flux_coefficients();
    }
    if (j.contains("t1_us")) {
      const auto& t = j.at("t1_us");
      if (!t.is_array() || t.size() != 2) throw ConfigError("t1_us must hold two entries");
      dev.t1_q1 = time_from_json(t[0]);
      dev.t1_q2 = time_from_json(t[1]);
    }
    if (j.contains("tphi_us")) {
      const auto& t = j.at("tphi_us");
      if (!t.is_array() || t.size() != 2) throw ConfigError("tphi_us must hold two entries");
      dev.tphi_q1 = time_from_json(t[0]);
      dev.tphi_q2 = time_from_json(t[1]);
    }
    dev.levels = j.value("levels", 2);
    dev.validate();
    return dev;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed device config: ") + e.what());
  }
}

nlohmann::json device_to_json(const DeviceParams& dev) {
  return {
      {"name", dev.name},
      {"omega1_ghz", dev.omega1 / kGHz},
      {"omega2_ghz", dev.omega2 / kGHz},
      {"eta1_mhz", dev.eta1 / kMHz},
      {"eta2_mhz", dev.eta2 / kMHz},
      {"g_mhz", dev.g / kMHz},
      {"flux_coeffs_mhz", {dev.flux.c1 / kMHz, dev.flux.c2 / kMHz, dev.flux.c3 / kMHz}},
      {"t1_us", {time_to_json(dev.t1_q1), time_to_json(dev.t1_q2)}},
      {"tphi_us", {time_to_json(dev.tphi_q1), time_to_json(dev.tphi_q2)}},
      {"levels", dev.levels},
  };
}

DeviceParams load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open device config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse device config '" + path + "': " + e.what());
  }
  return device_from_json(j);
}

}  // namespace sagate::device
