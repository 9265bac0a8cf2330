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
#include <vector>

#include "sagate/device.hpp"

namespace sagate::pulses {

/// First maximum of J1 and its value.
inline constexpr double kBesselPeakArgument = 1.8411837813406593;
inline constexpr double kBesselPeakValue = 0.58186522428159638;

/// Number of samples on [0, T] with step dt: floor(T/dt) + 1, tolerant to
/// rounding when dt divides T.
std::size_t sample_count(double duration, double dt);

/// Control-space trajectory of a driven two-level system. Rabi frequency and
/// detuning in rad/s, drive phase in rad.
struct BaseSchedule {
  double duration = 0.0;
  double dt = 0.0;
  double phi = 0.0;
  std::vector<double> times;
  std::vector<double> omega_r;
  std::vector<double> delta;
  // Set for the sine/cosine family, where the angle rate is known in closed form.
  bool sine_family = false;
  double omega0 = 0.0;

  std::size_t size() const { return times.size(); }
};

/// Omega_R(t) = omega0 sin(pi t / T), Delta(t) = omega0 cos(pi t / T).
BaseSchedule base_schedule(double duration, double omega0, double dt, double phi = 0.0);

/// Arbitrary sampled schedule on a uniform grid starting at 0.
BaseSchedule sampled_schedule(double dt, std::vector<double> omega_r, std::vector<double> delta,
                              double phi = 0.0);

/// Base schedule plus the counterdiabatic correction, expressed as the
/// combined drive magnitude omega_s and extra phase phi_s.
struct SuperadiabaticSchedule {
  double duration = 0.0;
  double dt = 0.0;
  double phi = 0.0;
  std::vector<double> times;
  std::vector<double> theta;
  std::vector<double> theta_dot;
  std::vector<double> omega_r;
  std::vector<double> omega_s;
  std::vector<double> phi_s;
  std::vector<double> delta;

  std::size_t size() const { return times.size(); }
};

SuperadiabaticSchedule superadiabatic_schedule(const BaseSchedule& base);

double bessel_j1(double x);
double bessel_j1_derivative(double x);

/// Inverse of J1 on its rising branch [0, kBesselPeakArgument]. Throws
/// NumericalError "requested coupling exceeds Bessel ceiling" outside
/// [0, J1(peak)].
double invert_bessel_j1(double x);

/// Sign s in beta_L = s (phi + phi_s). Fixed by comparing lab-frame and
/// effective-frame propagation; see dynamics::select_frame_convention.
inline constexpr int kBetaSign = -1;

/// Sampled parameters of the parametric flux modulation
/// F(t) = A(t) sin(carrier t + delta_L(t) + beta_L(t)).
struct ModulationParams {
  double dt = 0.0;
  double carrier = 0.0;
  std::vector<double> times;
  std::vector<double> amplitude;
  std::vector<double> amplitude_dot;
  std::vector<double> delta_l;
  std::vector<double> delta_l_dot;
  std::vector<double> beta_l;
  std::vector<double> beta_l_dot;

  std::size_t size() const { return times.size(); }
};

/// Maps a superadiabatic schedule onto modulation parameters for a transition
/// with bare coupling `g` (rad/s) and modulation carrier `carrier` (rad/s):
/// 2 g J1(A) = omega_s, beta_L = kBetaSign (phi + phi_s), delta_L = int Delta
/// (trapezoidal, delta_L(0) = 0).
ModulationParams modulation_params(const SuperadiabaticSchedule& sched, double g, double carrier,
                                   int beta_sign = kBetaSign);

/// Same mapping for a plain schedule (adiabatic or dynamical drive): the
/// coupling is omega_r with phase phi.
ModulationParams modulation_params(const BaseSchedule& sched, double g, double carrier,
                                   int beta_sign = kBetaSign);

/// Joins two modulation sequences on the same grid; the first sample of
/// `second` coincides with the last of `first` and is dropped. delta_L of the
/// second part is offset to stay continuous.
ModulationParams concatenate(const ModulationParams& first, const ModulationParams& second);

/// Exchange transition driven by the modulation: basis indices of the state
/// with the extra Q1 excitation (upper) and its partner (lower) in the
/// two-transmon product basis.
struct Transition {
  int upper = 0;
  int lower = 0;
};

/// |10> <-> |01>.
Transition swap_transition(const device::DeviceParams& dev);
/// |20> <-> |11>; requires three levels.
Transition cz_transition(const device::DeviceParams& dev);

/// Second-order level shifts (rad/s) of every product basis state caused by
/// the off-resonant Bessel sidebands of all exchange couplings under a
/// modulation of depth `amplitude` at `carrier`. Sidebands closer than
/// |carrier|/2 to resonance are treated as resonant and excluded.
std::vector<double> sideband_level_shifts(const device::DeviceParams& dev, double amplitude, double carrier);

/// Subtracts the differential sideband shift of `transition` from delta_L_dot
/// so the effective detuning equals the designed one, and re-integrates
/// delta_L. Returns the per-sample common-mode shift (mean of the two levels).
std::vector<double> compensate_sideband_shift(ModulationParams& mod, const device::DeviceParams& dev,
                                              Transition transition);

/// Physical waveform samples: F(t) (rad), its derivative (rad/s) and the flux
/// amplitude eps(t) = f^-1(Fdot(t)).
struct Waveform {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> f;
  std::vector<double> f_dot;
  std::vector<double> eps;

  std::size_t size() const { return times.size(); }
  double duration() const { return times.empty() ? 0.0 : times.back(); }
};

Waveform waveform(const ModulationParams& mod, const device::DeviceParams& dev, double dt);

/// Modulation carrier for the |01> <-> |10> exchange: omega2 - omega1.
double swap_carrier(const device::DeviceParams& dev);
/// Modulation carrier for the |11> <-> |20> exchange: omega11 - omega20 = omega2 - omega1 - eta1.
double cz_carrier(const device::DeviceParams& dev);

/// Largest drive magnitude the modulation can reach: 2 g J1(peak).
double coupling_ceiling(double g);

/// Default schedule amplitude: 0.9 sqrt(ceiling^2 - (pi/T)^2), i.e. the
/// combined drive peaks at 90 % of the ceiling.
double default_omega0(double g, double duration);

}  // namespace sagate::pulses
