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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sagate/error.hpp"
#include "sagate/experiments.hpp"

namespace sagate::experiments {

namespace {

constexpr double kPi = std::numbers::pi;

int lower_index(const device::DeviceParams&) { return 1; }
int upper_index(const device::DeviceParams& dev) { return dev.levels; }

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "superadiabatic") return Scheme::kSuperadiabatic;
  if (name == "adiabatic") return Scheme::kAdiabatic;
  if (name == "dynamical") return Scheme::kDynamical;
  throw ConfigError("unknown scheme '" + name + "' (expected superadiabatic, adiabatic or dynamical)");
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kSuperadiabatic:
      return "superadiabatic";
    case Scheme::kAdiabatic:
      return "adiabatic";
    case Scheme::kDynamical:
      return "dynamical";
  }
  return "unknown";
}

SwapDesign synthesize_swap(const device::DeviceParams& dev, double duration, const SwapOptions& options) {
  dev.validate();
  SwapDesign d;
  const double omega0 = options.omega0 ? *options.omega0 : pulses::default_omega0(dev.g, duration);
  d.base = pulses::base_schedule(duration, omega0, options.dt);
  d.schedule = pulses::superadiabatic_schedule(d.base);
  d.modulation = pulses::modulation_params(d.schedule, dev.g, pulses::swap_carrier(dev), options.beta_sign);
  if (options.compensate_shift) pulses::compensate_sideband_shift(d.modulation, dev, pulses::swap_transition(dev));
  d.waveform = pulses::waveform(d.modulation, dev, options.dt);
  return d;
}

ConventionCheck select_frame_convention(const device::DeviceParams& dev, double duration, double dt) {
  ConventionCheck check;
  for (int sign : {+1, -1}) {
    SwapOptions opt;
    opt.dt = dt;
    opt.beta_sign = sign;
    const SwapDesign d = synthesize_swap(dev, duration, opt);
    const auto h = dynamics::build_rotating_lab_hamiltonian(dev, d.waveform);
    const auto r = dynamics::propagate_unitary(h, duration, dt, operators::basis_state(dev.dim(), lower_index(dev)));
    const double p = std::norm((*r.final_state)(upper_index(dev)));
    (sign > 0 ? check.transfer_plus : check.transfer_minus) = p;
  }
  check.beta_sign = check.transfer_plus > check.transfer_minus ? +1 : -1;
  return check;
}

FrameEquivalenceResult frame_equivalence(const device::DeviceParams& dev, double duration,
                                         const SwapOptions& options) {
  const SwapDesign d = synthesize_swap(dev, duration, options);
  const int lower = lower_index(dev);
  const int upper = upper_index(dev);

  const auto h_lab = dynamics::build_rotating_lab_hamiltonian(dev, d.waveform);
  const auto lab = dynamics::propagate_unitary(h_lab, duration, options.dt, operators::basis_state(dev.dim(), lower), 1);

  // The lab state |01> seen from the slow frame, restricted to (upper, lower).
  const operators::QuantumState start = dynamics::micromotion_operator(dev, d.modulation, 0) *
                                        operators::basis_state(dev.dim(), lower);
  operators::QuantumState e0(2);
  e0 << start(upper), start(lower);
  const auto h_eff = dynamics::build_effective_hamiltonian(d.schedule);
  const auto eff = dynamics::propagate_unitary(h_eff, duration, options.dt, e0, 1);

  if (lab.states.size() != d.modulation.size() || eff.states.size() != lab.states.size())
    throw NumericalError("frame_equivalence: sample grids do not line up");

  FrameEquivalenceResult out;
  for (std::size_t i = 0; i < lab.states.size(); ++i) {
    const operators::QuantumState slow = dynamics::micromotion_operator(dev, d.modulation, i) * lab.states[i];
    const double p_lab = std::norm(slow(upper));
    const double p_raw = std::norm(lab.states[i](upper));
    const double p_eff = std::norm(eff.states[i](0));
    out.times.push_back(lab.times[i]);
    out.lab_upper.push_back(p_lab);
    out.raw_lab_upper.push_back(p_raw);
    out.effective_upper.push_back(p_eff);
    out.max_deviation = std::max(out.max_deviation, std::abs(p_lab - p_eff));
    out.max_raw_deviation = std::max(out.max_raw_deviation, std::abs(p_raw - p_eff));
  }
  return out;
}

std::vector<double> default_calibration_amplitudes(int count) {
  if (count < 2) throw ConfigError("calibration needs at least two amplitudes");
  return linspace(0.0, 1.2 * pulses::kBesselPeakArgument, count);
}

OscillationPeak first_maximum(const std::vector<double>& population, double dt, int window) {
  const std::size_t n = population.size();
  if (n < 3) return {};
  const int half = std::max(0, window / 2);
  std::vector<double> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) s += population[j];
    smooth[i] = s / static_cast<double>(hi - lo + 1);
  }
  std::size_t i = 0;
  while (i < n && smooth[i] <= 0.5) ++i;
  if (i == n) return {};
  while (i + 1 < n && smooth[i + 1] >= smooth[i]) ++i;
  if (i + 1 >= n || i + static_cast<std::size_t>(half) >= n)
    throw ConfigError("no full oscillation within t_max: increase t_max");
  if (i == 0) return {};
  const double y0 = smooth[i - 1], y1 = smooth[i], y2 = smooth[i + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  const double shift = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
  const double x = std::clamp(shift, -1.0, 1.0);
  return {(static_cast<double>(i) + x) * dt, y1 - 0.25 * (y0 - y2) * x};
}

CalibrationResult calibrate_effective_coupling(const device::DeviceParams& dev, const std::vector<double>& amplitudes,
                                               double t_max, double dt) {
  dev.validate();
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  const double carrier = pulses::swap_carrier(dev);
  const double upper_bound = 1.2 * pulses::kBesselPeakArgument + 1e-12;
  const std::size_t n = pulses::sample_count(t_max, dt);
  const int window = static_cast<int>(std::lround(2.0 * kPi / std::abs(carrier) / dt));

  CalibrationResult out;
  out.amplitudes = amplitudes;
  for (double a : amplitudes) {
    if (a < 0.0 || a > upper_bound)
      throw ConfigError("calibration amplitude " + std::to_string(a) + " outside [0, 1.2 A_peak]");
    pulses::Waveform w;
    w.dt = dt;
    // Drive on the Stark-shifted resonance.
    const auto shifts = pulses::sideband_level_shifts(dev, a, carrier);
    const double drive = carrier - (shifts[upper_index(dev)] - shifts[lower_index(dev)]);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) * dt;
      const double fd = a * drive * std::cos(drive * t);
      w.times.push_back(t);
      w.f.push_back(a * std::sin(drive * t));
      w.f_dot.push_back(fd);
      w.eps.push_back(device::invert_flux_response(fd, dev.flux));
    }
    const auto h = dynamics::build_lab_hamiltonian(dev, w);
    const auto r = dynamics::propagate_unitary(h, w.duration(), dt,
                                               operators::basis_state(dev.dim(), lower_index(dev)), 1);
    std::vector<double> p(r.states.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(r.states[i](upper_index(dev)));
    double g_eff = 0.0;
    if (a > 0.0) {
      const OscillationPeak peak = first_maximum(p, dt, window);
      if (peak.time <= 0.0)
        throw ConfigError("no full oscillation within t_max at A = " + std::to_string(a) + ": increase t_max");
      g_eff = std::sqrt(std::min(1.0, peak.value)) * kPi / (2.0 * peak.time);
    }
    out.g_eff.push_back(g_eff);
  }

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double j1 = pulses::bessel_j1(amplitudes[i]);
    num += out.g_eff[i] * j1;
    den += j1 * j1;
  }
  if (den <= 0.0) throw NumericalError("calibration fit needs a nonzero amplitude");
  out.fitted_g = num / den;
  out.peak_coupling = out.fitted_g * pulses::kBesselPeakValue;
  out.max_g_eff = *std::max_element(out.g_eff.begin(), out.g_eff.end());
  out.t_ql = out.max_g_eff > 0.0 ? kPi / (2.0 * out.max_g_eff) : device::kInfiniteTime;
  return out;
}

}  // namespace sagate::experiments
