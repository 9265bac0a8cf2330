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
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sagate/device.hpp"
#include "sagate/dynamics.hpp"
#include "sagate/pulses.hpp"

namespace sagate::experiments {

using operators::Operator;

inline constexpr double kDefaultDt = 0.1e-9;

enum class Scheme { kSuperadiabatic, kAdiabatic, kDynamical };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme scheme);

// ---------------------------------------------------------------------------
// SWAP synthesis and frame checks

struct SwapOptions {
  double dt = kDefaultDt;
  std::optional<double> omega0;  // defaults to pulses::default_omega0
  bool compensate_shift = true;  // cancel the differential sideband Stark shift
  int beta_sign = pulses::kBetaSign;
};

struct SwapDesign {
  pulses::BaseSchedule base;
  pulses::SuperadiabaticSchedule schedule;
  pulses::ModulationParams modulation;
  pulses::Waveform waveform;
};

/// Full synthesis chain for the |01> <-> |10> transfer.
SwapDesign synthesize_swap(const device::DeviceParams& dev, double duration, const SwapOptions& options = {});

struct ConventionCheck {
  int beta_sign = 0;
  double transfer_plus = 0.0;   // lab P(|10>) at the end with s = +1
  double transfer_minus = 0.0;  // same with s = -1
};

/// Runs the lab-frame SWAP for both signs of beta_L and picks the one that
/// transfers |01> -> |10>.
ConventionCheck select_frame_convention(const device::DeviceParams& dev, double duration, double dt = kDefaultDt);

struct FrameEquivalenceResult {
  std::vector<double> times;
  std::vector<double> lab_upper;        // P(|10>) of the dressed lab state
  std::vector<double> raw_lab_upper;    // P(|10>) of the lab state without the sideband kick
  std::vector<double> effective_upper;  // P(|10>) of the 2x2 effective propagation
  double max_deviation = 0.0;
  double max_raw_deviation = 0.0;
};

/// Lab-frame propagation (in the frame U_f) against the effective 2x2 model.
/// The lab state is mapped to the slow frame with the first-order sideband
/// kick exp(iK(t)), at every sample including t = 0.
FrameEquivalenceResult frame_equivalence(const device::DeviceParams& dev, double duration,
                                         const SwapOptions& options = {});

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationResult {
  std::vector<double> amplitudes;
  std::vector<double> g_eff;  // rad/s
  double fitted_g = 0.0;      // g of the one-parameter fit g_eff = g J1(A)
  double peak_coupling = 0.0; // fitted_g * J1 maximum
  double max_g_eff = 0.0;
  double t_ql = 0.0;          // pi / (2 max g_eff)
};

std::vector<double> default_calibration_amplitudes(int count = 20);

/// Constant-amplitude modulation F = A sin(w t) in the lab frame from |01>,
/// with w = (w2 - w1) minus the differential sideband Stark shift at A. Any
/// residual detuning d gives a detuned Rabi curve P = (g/W)^2 sin^2(W t),
/// W = sqrt(g^2 + d^2/4), so g_eff = sqrt(P_max) pi / (2 t_max).
CalibrationResult calibrate_effective_coupling(const device::DeviceParams& dev, const std::vector<double>& amplitudes,
                                               double t_max, double dt = kDefaultDt);

struct OscillationPeak {
  double time = 0.0;   // 0 if the curve never exceeds one half
  double value = 0.0;
};

/// First maximum of a sampled transfer curve after a one-carrier-period
/// moving average, refined by a parabola through the top three samples.
OscillationPeak first_maximum(const std::vector<double>& population, double dt, int window);

// ---------------------------------------------------------------------------
// Trajectories

struct TrajectoryOptions {
  double dt = kDefaultDt;
  int stride = 10;
  bool decoherence = false;
  bool emulate_tomography = false;  // ideal X/2, Y/2, I pre-rotations instead of expectations
  std::optional<double> omega0;
};

struct TrajectoryResult {
  Scheme scheme = Scheme::kSuperadiabatic;
  std::vector<double> times;
  std::vector<std::array<double, 3>> bloch;  // |01> is the north pole
  std::vector<double> upper_population;      // P(|10>)
};

TrajectoryResult trajectory(Scheme scheme, double duration, const device::DeviceParams& dev,
                            const TrajectoryOptions& options = {});

// ---------------------------------------------------------------------------
// Robustness

struct RobustnessOptions {
  double dt = kDefaultDt;
  double omega_xc_over_g = 0.36;
  double t_c = 110e-9;
  bool decoherence = false;
  // Dynamical scheme only: retune Omega_xc to the exact pi-area value
  // pi / (2 T_c) so the unperturbed cell is a perfect swap (0.36 g at
  // 110 ns is 0.8% short of it).
  bool pi_area_dynamical = true;
};

struct RobustnessGrid {
  Scheme scheme = Scheme::kSuperadiabatic;
  bool decoherence = false;
  std::vector<double> omega_axis;  // Omega_x / Omega_xc
  std::vector<double> time_axis;   // T / T_c
  std::vector<std::vector<double>> fidelity;  // [omega][time]; NaN marks an invalid cell
};

std::vector<double> linspace(double lo, double hi, int count);

/// Final P(|10>) for one perturbed run: the waveform designed at
/// (Omega_xc, T_c) played with its coupling scaled by a and its time axis
/// stretched by b.
double robustness_point(Scheme scheme, double a, double b, const device::DeviceParams& dev,
                        const RobustnessOptions& options = {});

RobustnessGrid robustness_scan(Scheme scheme, const std::vector<double>& omega_axis,
                               const std::vector<double>& time_axis, const device::DeviceParams& dev,
                               const RobustnessOptions& options = {});

// ---------------------------------------------------------------------------
// SA-CZ

struct CzOptions {
  double dt = kDefaultDt;
  bool decoherence = false;
  std::optional<double> omega0;
  bool compensate_shift = true;
  bool calibrate_phase = true;  // tune the second segment so the conditional phase is pi
  // Drive phase of the base schedule. Unset: the phase with the least
  // leakage from |11> on a 16-point scan, which sets how abruptly the
  // sidebands switch on and off.
  std::optional<double> phi;
  int stride = 10;
};

struct CzResult {
  pulses::ModulationParams modulation;
  pulses::Waveform waveform;
  double kappa = 0.0;  // relative Omega0 change of the second segment
  double phi = 0.0;    // drive phase used
  // Gate in the idle eigenbasis, rotating at the dressed energies (9x9).
  Operator unitary;
  // Same basis, 81x81, local phases corrected; only with decoherence.
  std::optional<Operator> superoperator;
  dynamics::GateFidelityReport report;
  double conditional_phase = 0.0;
  std::vector<double> times;
  // P(|11>), P(|20>), P(|00>), P(|01>), P(|10>) in the idle eigenbasis,
  // starting from the dressed |11>
  std::vector<std::array<double, 5>> populations;
};

Operator cz_target();

/// Round trip |11> -> |20> -> |11> built from two identical
/// superadiabatic sideband segments of length t_half each.
CzResult cz_gate(const device::DeviceParams& dev, double t_half, const CzOptions& options = {});

/// arg U11 - arg U10 - arg U01 + arg U00 of the computational block, in (-pi, pi].
double conditional_phase(const Operator& u, int levels);

// ---------------------------------------------------------------------------
// Ramsey

struct SinusoidFit {
  double amplitude = 0.0;
  double phase = 0.0;  // phi0 in a cos(phi - phi0) + b
  double offset = 0.0;
  double max_residual = 0.0;
};

/// Linear least squares for a cos(phi - phi0) + b. Throws NumericalError
/// "poor sinusoidal fit" if any residual exceeds 0.05.
SinusoidFit fit_sinusoid(const std::vector<double>& phases, const std::vector<double>& values);

struct RamseyResult {
  std::vector<double> phases;
  std::array<std::vector<double>, 2> excited;  // P(Q2 = 1) for control |0>, |1>
  std::array<SinusoidFit, 2> fits;
  double conditional_phase = 0.0;  // in [0, 2 pi)
};

/// Q1 in |c>, Q2 in (|0> + |1>)/sqrt 2, apply the gate, then an ideal pi/2
/// rotation about (cos phi, sin phi, 0) on Q2.
RamseyResult ramsey_conditional_phase(const Operator& gate, int levels, const std::vector<double>& phases);

// ---------------------------------------------------------------------------
// Clifford group

struct Primitive {
  enum class Kind { kSingle, kCz };
  Kind kind = Kind::kSingle;
  int q1 = 0;  // single-qubit Clifford indices for kSingle
  int q2 = 0;
};

struct CliffordElement {
  int index = 0;
  Operator unitary;  // 4x4
  std::vector<Primitive> decomposition;  // applied left to right
};

inline constexpr int kCliffordCount = 11520;

/// The 24 single-qubit Cliffords; element 0 is the identity.
const std::vector<Operator>& single_qubit_cliffords();
Operator primitive_unitary(const Primitive& p);
CliffordElement generate_clifford(int index);
CliffordElement sample_clifford(std::mt19937_64& rng);
/// Index of the element equal to u up to a global phase, or -1.
int clifford_index(const Operator& u);

// ---------------------------------------------------------------------------
// Randomized benchmarking

enum class RbVariant { kReference, kInterleavedCz, kInterleavedIdle };
RbVariant parse_rb_variant(const std::string& name);
std::string to_string(RbVariant variant);

/// Channels used to execute a sequence. Superoperators act on vec(rho) of the
/// levels^2-dimensional two-transmon space (column stacking).
struct GateModel {
  enum class Kind { kIdeal, kDepolarizing, kLindblad };
  Kind kind = Kind::kIdeal;
  int levels = 2;
  double depolarizing = 1.0;                 // per-Clifford parameter for kDepolarizing
  std::optional<Operator> layer_channel;     // after every single-qubit layer
  std::optional<Operator> cz_channel;        // replaces the ideal CZ primitive
  std::optional<Operator> interleaved_cz;    // interleaved target for kInterleavedCz
  std::optional<Operator> interleaved_idle;  // interleaved target for kInterleavedIdle
};

GateModel ideal_gate_model();
GateModel depolarizing_gate_model(double p0);

struct LindbladModelOptions {
  double t_half = 60e-9;
  double layer_idle = 30e-9;
  std::optional<double> idle_duration;  // default 2 t_half
  double dt = kDefaultDt;
};

/// CZ from its simulated waveform with decoherence (virtual-Z corrected),
/// single-qubit layers as ideal rotations followed by idle decoherence.
GateModel lindblad_gate_model(const device::DeviceParams& dev, const LindbladModelOptions& options = {});

/// Superoperator of pure decoherence (no Hamiltonian) over `duration`.
Operator idle_channel(const device::DeviceParams& dev, double duration, double dt = 1e-9);

struct ExponentialFit {
  double a = 0.0;
  double p = 0.0;
  double b = 0.0;
  bool converged = false;
  bool degenerate = false;
  int iterations = 0;
};

/// A p^m + B by Levenberg-Marquardt with 0 < p < 1.
ExponentialFit fit_exponential(const std::vector<double>& m, const std::vector<double>& means);

struct RbResult {
  RbVariant variant = RbVariant::kReference;
  std::vector<int> lengths;
  std::vector<double> mean;
  std::vector<double> stderr_mean;
  ExponentialFit fit;
  std::optional<double> error_rate;
};

RbResult run_rb(RbVariant variant, const std::vector<int>& lengths, int k, std::uint64_t seed,
                const GateModel& model);

/// (1 - p_int / p_ref)(d - 1)/d with d = 4; nullopt unless both fits converged.
std::optional<double> interleaved_error_rate(const RbResult& reference, const RbResult& interleaved);

/// P(|00>) after one random sequence: m Cliffords (each followed by the
/// interleaved channel if given) and the recovery element.
double rb_sequence_survival(int m, std::uint64_t seed, int m_index, int draw, const GateModel& model,
                            RbVariant variant);

}  // namespace sagate::experiments
