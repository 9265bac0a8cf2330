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

#include <Eigen/QR>

#include "sagate/error.hpp"
#include "sagate/experiments.hpp"
#include "sagate/numeric.hpp"

namespace sagate::experiments {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Maps the propagator in the frame U_f to the idle eigenbasis, rotating at
// the dressed energies: G = exp(iET) D^dag U_f(T)^dag U U_f(0) D.
struct DressedFrame {
  Operator left;
  Operator right;
  Operator basis;
};

DressedFrame dressed_frame(const device::DeviceParams& dev, const pulses::Waveform& wave) {
  const auto dressed = dynamics::dressed_basis(dev);
  const double t = wave.duration();
  Operator phases = Operator::Zero(dev.dim(), dev.dim());
  for (int k = 0; k < dev.dim(); ++k) phases(k, k) = std::exp(operators::kI * (dressed.energies(k) * t));
  DressedFrame f;
  f.basis = dressed.vectors;
  f.left = phases * dressed.vectors.adjoint() * dynamics::frame_operator(dev, wave.f.back(), t).adjoint();
  f.right = dynamics::frame_operator(dev, wave.f.front(), 0.0) * dressed.vectors;
  return f;
}

struct CzDesign {
  pulses::ModulationParams modulation;
  pulses::Waveform waveform;
  Operator unitary;
};

CzDesign design(const device::DeviceParams& dev, double t_half, double omega0, double kappa, double phi,
                const CzOptions& options) {
  const double g = kSqrt2 * dev.g;
  const double carrier = pulses::cz_carrier(dev);
  auto segment = [&](double scale) {
    const auto base = pulses::base_schedule(t_half, omega0 * scale, options.dt, phi);
    return pulses::modulation_params(pulses::superadiabatic_schedule(base), g, carrier);
  };
  CzDesign d;
  d.modulation = pulses::concatenate(segment(1.0), segment(1.0 + kappa));
  if (options.compensate_shift) pulses::compensate_sideband_shift(d.modulation, dev, pulses::cz_transition(dev));
  d.waveform = pulses::waveform(d.modulation, dev, options.dt);
  const auto h = dynamics::build_rotating_lab_hamiltonian(dev, d.waveform);
  const Operator u = *dynamics::propagate_unitary(h, d.waveform.duration(), options.dt, std::nullopt).unitary;
  const DressedFrame f = dressed_frame(dev, d.waveform);
  d.unitary = f.left * u * f.right;
  return d;
}

// Computational-subspace block of a superoperator on the levels^2 space.
Operator computational_block(const Operator& s, int levels) {
  const int dim = levels * levels;
  const auto idx = dynamics::computational_indices(levels);
  Operator out(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) out(i + 4 * j, k + 4 * l) = s(idx[i] + dim * idx[j], idx[k] + dim * idx[l]);
  return out;
}

}  // namespace

Operator cz_target() {
  Operator t = Operator::Identity(4, 4);
  t(3, 3) = -1.0;
  return t;
}

double conditional_phase(const Operator& u, int levels) {
  const auto idx = dynamics::computational_indices(levels);
  const double phase = std::arg(u(idx[3], idx[3])) - std::arg(u(idx[2], idx[2])) - std::arg(u(idx[1], idx[1])) +
                       std::arg(u(idx[0], idx[0]));
  return numeric::wrap_angle(phase);
}

CzResult cz_gate(const device::DeviceParams& dev, double t_half, const CzOptions& options) {
  dev.validate();
  if (dev.levels != 3) throw ConfigError("cz_gate requires 3 levels per transmon");
  if (options.stride < 1) throw ConfigError("cz_gate: stride must be positive");
  const double omega0 = options.omega0 ? *options.omega0 : pulses::default_omega0(kSqrt2 * dev.g, t_half);

  // Conditional-phase calibration: secant on the second segment's Omega0.
  auto phase_error = [&](const CzDesign& d) {
    return numeric::wrap_angle(conditional_phase(d.unitary, dev.levels) - kPi);
  };
  double phi = 0.0;
  if (options.phi) {
    phi = *options.phi;
  } else {
    const int s11 = dev.levels + 1;
    double least = 2.0;
    for (int k = 0; k < 16; ++k) {
      const double trial = 2.0 * kPi * k / 16.0;
      const CzDesign d = design(dev, t_half, omega0, 0.0, trial, options);
      double kept = 0.0;
      for (int i : dynamics::computational_indices(dev.levels)) kept += std::norm(d.unitary(i, s11));
      if (1.0 - kept < least) {
        least = 1.0 - kept;
        phi = trial;
      }
    }
  }
  double kappa = 0.0;
  CzDesign best = design(dev, t_half, omega0, kappa, phi, options);
  if (options.calibrate_phase) {
    double k0 = 0.0, e0 = phase_error(best);
    double k1 = 0.01;
    CzDesign d1 = design(dev, t_half, omega0, k1, phi, options);
    double e1 = phase_error(d1);
    for (int it = 0; it < 30 && std::abs(e1) > 1e-7; ++it) {
      if (e1 == e0) break;
      const double k2 = std::clamp(k1 - e1 * (k1 - k0) / (e1 - e0), -0.5, 0.5);
      k0 = k1;
      e0 = e1;
      k1 = k2;
      d1 = design(dev, t_half, omega0, k1, phi, options);
      e1 = phase_error(d1);
    }
    if (std::abs(e1) > 1e-3) throw NumericalError("cz_gate: conditional phase calibration did not converge");
    kappa = k1;
    best = std::move(d1);
  }

  CzResult out;
  out.modulation = std::move(best.modulation);
  out.waveform = std::move(best.waveform);
  out.kappa = kappa;
  out.phi = phi;
  out.unitary = best.unitary;
  out.report = dynamics::process_fidelity(out.unitary, cz_target(), true);
  out.conditional_phase = conditional_phase(out.unitary, dev.levels);

  const double total = out.waveform.duration();
  const auto h = dynamics::build_rotating_lab_hamiltonian(dev, out.waveform);
  const int l = dev.levels;
  const int s11 = l + 1, s20 = 2 * l, s00 = 0, s01 = 1, s10 = l;
  const DressedFrame frame = dressed_frame(dev, out.waveform);
  // Trajectory samples in the idle eigenbasis (lab frame).
  auto to_dressed = [&](double t) {
    return Operator(frame.basis.adjoint() *
                    dynamics::frame_operator(dev, dynamics::waveform_phase(out.waveform, t), t).adjoint());
  };
  const operators::QuantumState start = frame.right * operators::basis_state(l * l, s11);
  std::vector<operators::DensityMatrix> rhos;
  if (options.decoherence) {
    const auto c = device::collapse_operators(dev);
    const Operator s = dynamics::lindblad_superoperator(h, c, total, options.dt);
    const Operator z = dynamics::local_phase_operator(l, out.report.z1, out.report.z2);
    const Operator corrected = dynamics::unitary_superoperator(z * frame.left) * s *
                               dynamics::unitary_superoperator(frame.right);
    out.superoperator = corrected;
    // Channel fidelity on the computational subspace.
    const Operator block = computational_block(corrected, l);
    const Operator target = dynamics::unitary_superoperator(cz_target());
    const double f_pro = (target.adjoint() * block).trace().real() / 16.0;
    operators::DensityMatrix mixed = operators::DensityMatrix::Zero(l * l, l * l);
    for (int i : dynamics::computational_indices(l)) mixed(i, i) = 0.25;
    const operators::DensityMatrix after = dynamics::apply_superoperator(corrected, mixed);
    double kept = 0.0;
    for (int i : dynamics::computational_indices(l)) kept += after(i, i).real();
    out.report.process_fidelity = f_pro;
    out.report.leakage = 1.0 - kept;
    out.report.average_gate_fidelity = (4.0 * f_pro + kept) / 5.0;
    const auto r = dynamics::propagate_lindblad(h, c, operators::pure_density(start), total, options.dt,
                                                options.stride);
    out.times = r.times;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      const Operator v = to_dressed(r.times[i]);
      rhos.push_back(v * r.densities[i] * v.adjoint());
    }
  } else {
    const auto r = dynamics::propagate_unitary(h, total, options.dt, start, options.stride);
    out.times = r.times;
    for (std::size_t i = 0; i < r.times.size(); ++i)
      rhos.push_back(operators::pure_density(to_dressed(r.times[i]) * r.states[i]));
  }
  for (const auto& rho : rhos)
    out.populations.push_back({rho(s11, s11).real(), rho(s20, s20).real(), rho(s00, s00).real(),
                               rho(s01, s01).real(), rho(s10, s10).real()});
  return out;
}

SinusoidFit fit_sinusoid(const std::vector<double>& phases, const std::vector<double>& values) {
  const std::size_t n = phases.size();
  if (n != values.size() || n < 3) throw ConfigError("fit_sinusoid: need at least three matching samples");
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, 0) = std::cos(phases[i]);
    a(i, 1) = std::sin(phases[i]);
    a(i, 2) = 1.0;
    y(i) = values[i];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
  SinusoidFit fit;
  fit.amplitude = std::hypot(c(0), c(1));
  fit.phase = std::atan2(c(1), c(0));
  fit.offset = c(2);
  fit.max_residual = (a * c - y).cwiseAbs().maxCoeff();
  if (fit.max_residual > 0.05) throw NumericalError("poor sinusoidal fit");
  return fit;
}

RamseyResult ramsey_conditional_phase(const Operator& gate, int levels, const std::vector<double>& phases) {
  const int dim = levels * levels;
  if (levels < 2 || gate.rows() != dim || gate.cols() != dim)
    throw ConfigError("ramsey: gate dimension does not match levels");
  if (phases.empty()) throw ConfigError("ramsey: no phases");
  const auto [lo, hi] = std::minmax_element(phases.begin(), phases.end());
  if (*hi - *lo < 2.0 * kPi - 1e-9) throw ConfigError("ramsey: phases must span at least 2 pi");

  RamseyResult out;
  out.phases = phases;
  const std::vector<int> dims{levels, levels};
  for (int control = 0; control < 2; ++control) {
    operators::QuantumState psi = operators::QuantumState::Zero(dim);
    psi(control * levels + 0) = 1.0 / kSqrt2;
    psi(control * levels + 1) = 1.0 / kSqrt2;
    const operators::QuantumState after_gate = gate * psi;
    for (double phi : phases) {
      const Operator axis = std::cos(phi) * operators::pauli_x() + std::sin(phi) * operators::pauli_y();
      Operator r = Operator::Identity(levels, levels);
      r.topLeftCorner(2, 2) = operators::expm_propagator(axis, 0.25 * kPi);
      const operators::QuantumState final_state = operators::embed(r, 1, dims) * after_gate;
      double p = 0.0;
      for (int k1 = 0; k1 < levels; ++k1) p += std::norm(final_state(k1 * levels + 1));
      out.excited[control].push_back(p);
    }
    out.fits[control] = fit_sinusoid(phases, out.excited[control]);
  }
  double diff = std::fmod(out.fits[1].phase - out.fits[0].phase, 2.0 * kPi);
  if (diff < 0.0) diff += 2.0 * kPi;
  out.conditional_phase = diff;
  return out;
}

}  // namespace sagate::experiments
