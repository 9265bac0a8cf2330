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

#include "sagate/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sagate/error.hpp"
#include "sagate/numeric.hpp"

namespace sagate::pulses {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid(std::size_t n, double dt) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}

[[noreturn]] void ceiling_error(std::size_t index, double time, double requested) {
  std::ostringstream msg;
  msg << "requested coupling exceeds Bessel ceiling at sample " << index << " (t = " << time * 1e9
      << " ns, J1 argument " << requested << " > " << kBesselPeakValue << ")";
  throw NumericalError(msg.str());
}

ModulationParams build_modulation(double dt, const std::vector<double>& times,
                                  const std::vector<double>& magnitude,
                                  const std::vector<double>& phase, const std::vector<double>& delta,
                                  double g, double carrier, int beta_sign) {
  if (g <= 0.0) throw ConfigError("modulation_params: coupling g must be positive");
  if (beta_sign != 1 && beta_sign != -1) throw ConfigError("modulation_params: beta sign must be +-1");
  const std::size_t n = times.size();
  ModulationParams mod;
  mod.dt = dt;
  mod.carrier = carrier;
  mod.times = times;
  mod.amplitude.resize(n);
  mod.beta_l.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = magnitude[i] / (2.0 * g);
    if (x < 0.0) throw ConfigError("modulation_params: negative drive magnitude");
    if (x > kBesselPeakValue) ceiling_error(i, times[i], x);
    mod.amplitude[i] = invert_bessel_j1(x);
    mod.beta_l[i] = beta_sign * phase[i];
  }
  mod.amplitude_dot = numeric::gradient(mod.amplitude, dt);
  mod.beta_l_dot = numeric::gradient(mod.beta_l, dt);
  mod.delta_l = numeric::cumulative_trapezoid(delta, dt);
  mod.delta_l_dot = delta;
  return mod;
}

}  // namespace

std::size_t sample_count(double duration, double dt) {
  if (!(duration > 0.0) || !(dt > 0.0)) throw ConfigError("duration and dt must be positive");
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

BaseSchedule base_schedule(double duration, double omega0, double dt, double phi) {
  if (!(omega0 > 0.0)) throw ConfigError("base_schedule: omega0 must be positive");
  const std::size_t n = sample_count(duration, dt);
  BaseSchedule s;
  s.duration = duration;
  s.dt = dt;
  s.phi = phi;
  s.times = grid(n, dt);
  s.omega_r.resize(n);
  s.delta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = kPi * s.times[i] / duration;
    s.omega_r[i] = omega0 * std::sin(x);
    s.delta[i] = omega0 * std::cos(x);
  }
  // Pin the endpoints exactly.
  s.omega_r.front() = 0.0;
  if (std::abs(s.times.back() - duration) < 1e-6 * dt) s.omega_r.back() = 0.0;
  s.sine_family = true;
  s.omega0 = omega0;
  return s;
}

BaseSchedule sampled_schedule(double dt, std::vector<double> omega_r, std::vector<double> delta,
                              double phi) {
  if (!(dt > 0.0)) throw ConfigError("sampled_schedule: dt must be positive");
  if (omega_r.size() != delta.size() || omega_r.size() < 3)
    throw ConfigError("sampled_schedule: need matching arrays with at least 3 samples");
  BaseSchedule s;
  s.dt = dt;
  s.phi = phi;
  s.times = grid(omega_r.size(), dt);
  s.duration = s.times.back();
  s.omega_r = std::move(omega_r);
  s.delta = std::move(delta);
  return s;
}

SuperadiabaticSchedule superadiabatic_schedule(const BaseSchedule& base) {
  const std::size_t n = base.size();
  SuperadiabaticSchedule s;
  s.duration = base.duration;
  s.dt = base.dt;
  s.phi = base.phi;
  s.times = base.times;
  s.omega_r = base.omega_r;
  s.delta = base.delta;
  s.theta.resize(n);

  // Continuous angle: accumulate wrapped increments of atan2(Omega_R, Delta).
  double previous = std::atan2(base.omega_r[0], base.delta[0]);
  s.theta[0] = previous;
  for (std::size_t i = 1; i < n; ++i) {
    const double raw = std::atan2(base.omega_r[i], base.delta[i]);
    s.theta[i] = s.theta[i - 1] + numeric::wrap_angle(raw - previous);
    previous = raw;
  }

  if (base.sine_family) {
    s.theta_dot.assign(n, kPi / base.duration);
  } else {
    s.theta_dot = numeric::gradient(s.theta, base.dt);
  }

  s.omega_s.resize(n);
  s.phi_s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.omega_s[i] = std::hypot(s.omega_r[i], s.theta_dot[i]);
    // atan(theta_dot / Omega_R) with the Omega_R -> 0 limit at +-pi/2.
    s.phi_s[i] = std::atan2(s.theta_dot[i], s.omega_r[i]);
  }
  return s;
}

double bessel_j1(double x) { return x < 0.0 ? -std::cyl_bessel_j(1.0, -x) : std::cyl_bessel_j(1.0, x); }

double bessel_j1_derivative(double x) {
  if (std::abs(x) < 1e-8) return 0.5;
  return std::cyl_bessel_j(0.0, std::abs(x)) - bessel_j1(x) / x;
}

double invert_bessel_j1(double x) {
  if (!(x >= 0.0) || x > kBesselPeakValue + 1e-15)
    throw NumericalError("requested coupling exceeds Bessel ceiling");
  if (x == 0.0) return 0.0;
  if (x >= kBesselPeakValue) return kBesselPeakArgument;

  // Bisection brackets the root on the rising branch; Newton polishes it.
  double lo = 0.0;
  double hi = kBesselPeakArgument;
  for (int i = 0; i < 30; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j1(mid) < x ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double r = bessel_j1(a) - x;
    if (std::abs(r) <= 1e-14) break;
    const double slope = bessel_j1_derivative(a);
    double next = slope > 0.0 ? a - r / slope : 0.5 * (lo + hi);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    (bessel_j1(next) < x ? lo : hi) = next;
    a = next;
  }
  if (std::abs(bessel_j1(a) - x) > 1e-10) throw NumericalError("Bessel inversion did not converge");
  return a;
}

ModulationParams modulation_params(const SuperadiabaticSchedule& sched, double g, double carrier,
                                   int beta_sign) {
  std::vector<double> phase(sched.size());
  for (std::size_t i = 0; i < sched.size(); ++i) phase[i] = sched.phi + sched.phi_s[i];
  return build_modulation(sched.dt, sched.times, sched.omega_s, phase, sched.delta, g, carrier,
                          beta_sign);
}

ModulationParams modulation_params(const BaseSchedule& sched, double g, double carrier, int beta_sign) {
  std::vector<double> phase(sched.size(), sched.phi);
  return build_modulation(sched.dt, sched.times, sched.omega_r, phase, sched.delta, g, carrier,
                          beta_sign);
}

ModulationParams concatenate(const ModulationParams& first, const ModulationParams& second) {
  if (first.size() == 0) return second;
  if (second.size() == 0) return first;
  if (std::abs(first.dt - second.dt) > 1e-12 * first.dt || first.carrier != second.carrier)
    throw ConfigError("concatenate: grids or carriers differ");
  ModulationParams out = first;
  const double t0 = first.times.back();
  const double offset = first.delta_l.back() - second.delta_l.front();
  for (std::size_t i = 1; i < second.size(); ++i) {
    out.times.push_back(t0 + second.times[i] - second.times[0]);
    out.amplitude.push_back(second.amplitude[i]);
    out.amplitude_dot.push_back(second.amplitude_dot[i]);
    out.delta_l.push_back(second.delta_l[i] + offset);
    out.delta_l_dot.push_back(second.delta_l_dot[i]);
    out.beta_l.push_back(second.beta_l[i]);
    out.beta_l_dot.push_back(second.beta_l_dot[i]);
  }
  return out;
}

Waveform waveform(const ModulationParams& mod, const device::DeviceParams& dev, double dt) {
  if (std::abs(dt - mod.dt) > 1e-9 * mod.dt)
    throw ConfigError("waveform: dt does not match the modulation grid");
  const std::size_t n = mod.size();
  Waveform w;
  w.dt = mod.dt;
  w.times = mod.times;
  w.f.resize(n);
  w.f_dot.resize(n);
  w.eps.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = mod.carrier * mod.times[i] + mod.delta_l[i] + mod.beta_l[i];
    const double rate = mod.carrier + mod.delta_l_dot[i] + mod.beta_l_dot[i];
    w.f[i] = mod.amplitude[i] * std::sin(x);
    w.f_dot[i] = mod.amplitude_dot[i] * std::sin(x) + mod.amplitude[i] * rate * std::cos(x);
    try {
      w.eps[i] = device::invert_flux_response(w.f_dot[i], dev.flux);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (waveform sample " + std::to_string(i) + ")");
    }
  }
  return w;
}

Transition swap_transition(const device::DeviceParams& dev) {
  return {operators::product_index({1, 0}, dev.dims()), operators::product_index({0, 1}, dev.dims())};
}

Transition cz_transition(const device::DeviceParams& dev) {
  if (dev.levels < 3) throw ConfigError("the |11> <-> |20> transition needs three levels per transmon");
  return {operators::product_index({2, 0}, dev.dims()), operators::product_index({1, 1}, dev.dims())};
}

std::vector<double> sideband_level_shifts(const device::DeviceParams& dev, double amplitude, double carrier) {
  constexpr int kOrders = 12;
  const int d = dev.dim();
  const int levels = dev.levels;
  const auto dims = dev.dims();
  const operators::Operator a1 = operators::embed(operators::lowering(levels), 0, dims);
  const operators::Operator a2 = operators::embed(operators::lowering(levels), 1, dims);
  const operators::Operator v = dev.g * (a1.adjoint() * a2 + a1 * a2.adjoint());
  auto energy = [&](int k) {
    const double n1 = k / levels;
    const double n2 = k % levels;
    return dev.omega1 * n1 + dev.omega2 * n2 + 0.5 * dev.eta1 * n1 * (n1 - 1) + 0.5 * dev.eta2 * n2 * (n2 - 1);
  };
  std::vector<double> bessel_sq(2 * kOrders + 1);
  for (int n = -kOrders; n <= kOrders; ++n) {
    const double j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), amplitude);
    bessel_sq[n + kOrders] = j * j;
  }
  std::vector<double> shift(d, 0.0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double vab = std::abs(v(a, b));
      if (a == b || vab == 0.0) continue;
      // Coupling |a><b| carries exp(i [(E_a - E_b) t + (n1_a - n1_b) F(t)]); each
      // sideband n rotates at nu = E_a - E_b + n (n1_a - n1_b) carrier and shifts
      // |a> by |V J_n|^2 / nu.
      const double rate = energy(a) - energy(b);
      const double dn1 = a / levels - b / levels;
      for (int n = -kOrders; n <= kOrders; ++n) {
        const double nu = rate + n * dn1 * carrier;
        if (std::abs(nu) < 0.5 * std::abs(carrier)) continue;
        shift[a] += vab * vab * bessel_sq[n + kOrders] / nu;
      }
    }
  }
  return shift;
}

std::vector<double> compensate_sideband_shift(ModulationParams& mod, const device::DeviceParams& dev,
                                              Transition transition) {
  std::vector<double> common(mod.size());
  for (std::size_t i = 0; i < mod.size(); ++i) {
    const auto shift = sideband_level_shifts(dev, mod.amplitude[i], mod.carrier);
    mod.delta_l_dot[i] -= shift[transition.upper] - shift[transition.lower];
    common[i] = 0.5 * (shift[transition.upper] + shift[transition.lower]);
  }
  mod.delta_l = numeric::cumulative_trapezoid(mod.delta_l_dot, mod.dt);
  return common;
}

double swap_carrier(const device::DeviceParams& dev) { return dev.omega2 - dev.omega1; }

double cz_carrier(const device::DeviceParams& dev) { return dev.omega2 - dev.omega1 - dev.eta1; }

double coupling_ceiling(double g) { return 2.0 * g * kBesselPeakValue; }

double default_omega0(double g, double duration) {
  const double ceiling = coupling_ceiling(g);
  const double rate = kPi / duration;
  if (rate >= ceiling)
    throw NumericalError("requested coupling exceeds Bessel ceiling: duration below the speed limit");
  return 0.9 * std::sqrt(ceiling * ceiling - rate * rate);
}

}  // namespace sagate::pulses
