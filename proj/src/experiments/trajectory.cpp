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

#include <cmath>
#include <limits>
#include <numbers>

#include "sagate/error.hpp"
#include "sagate/experiments.hpp"

namespace sagate::experiments {

namespace {

using operators::Complex;
using operators::DensityMatrix;

// Lifts a 2x2 Hamiltonian on (upper, lower) into the two-transmon space.
dynamics::TimeDependentHamiltonian embed_pair(const dynamics::TimeDependentHamiltonian& h2, int dim, int upper,
                                              int lower) {
  auto lift = [&](const Operator& op) {
    Operator out = Operator::Zero(dim, dim);
    const int idx[2] = {upper, lower};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(idx[r], idx[c]) = op(r, c);
    return out;
  };
  dynamics::TimeDependentHamiltonian h(dim);
  h.constant = lift(h2.constant);
  for (const auto& term : h2.terms) h.add(lift(term.op), term.coeff);
  return h;
}

// Bloch vector of the (|01>, |10>) block with |01> as the north pole.
std::array<double, 3> bloch_vector(const DensityMatrix& rho, int upper, int lower) {
  const Complex coherence = rho(upper, lower);
  return {2.0 * coherence.real(), 2.0 * coherence.imag(), (rho(lower, lower) - rho(upper, upper)).real()};
}

// Ideal pre-rotation about x or y by pi/2 on the (|01>, |10>) qubit, then the
// z expectation: x = -z after Y/2, y = +z after X/2.
std::array<double, 3> tomography(const DensityMatrix& rho, int upper, int lower) {
  auto z_after = [&](const Operator& r2) {
    Operator r = Operator::Identity(rho.rows(), rho.cols());
    const int idx[2] = {lower, upper};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) r(idx[a], idx[b]) = r2(a, b);
    const DensityMatrix out = r * rho * r.adjoint();
    return (out(lower, lower) - out(upper, upper)).real();
  };
  const Operator x_half = operators::expm_propagator(operators::pauli_x(), 0.25 * std::numbers::pi);
  const Operator y_half = operators::expm_propagator(operators::pauli_y(), 0.25 * std::numbers::pi);
  return {-z_after(y_half), z_after(x_half), z_after(Operator::Identity(2, 2))};
}

struct EffectiveRun {
  dynamics::TimeDependentHamiltonian h{2};
  double duration = 0.0;
  double max_coupling = 0.0;  // largest executed Omega/2 (exchange rate)
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Effective Hamiltonian of one scheme designed at (omega0, t0) and played
// with coupling scale a and time stretch b.
EffectiveRun scheme_hamiltonian(Scheme scheme, double omega0, double t0, double dt, double a, double b) {
  EffectiveRun run;
  run.duration = b * t0;
  const pulses::BaseSchedule base = pulses::base_schedule(t0, omega0, dt);
  std::vector<double> delta, magnitude, phase;
  switch (scheme) {
    case Scheme::kSuperadiabatic: {
      const auto sa = pulses::superadiabatic_schedule(base);
      delta = sa.delta;
      magnitude = sa.omega_s;
      phase.resize(sa.size());
      for (std::size_t i = 0; i < sa.size(); ++i) phase[i] = sa.phi + sa.phi_s[i];
      break;
    }
    case Scheme::kAdiabatic:
      delta = base.delta;
      magnitude = base.omega_r;
      phase.assign(base.size(), base.phi);
      break;
    case Scheme::kDynamical:
      delta.assign(base.size(), 0.0);
      magnitude.assign(base.size(), omega0);
      phase.assign(base.size(), 0.0);
      break;
  }
  for (double& m : magnitude) m *= a;
  run.max_coupling = 0.5 * max_abs(magnitude);
  run.h = dynamics::effective_hamiltonian(b * dt, 0.0, delta, magnitude, phase);
  return run;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("linspace: count must be positive");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

TrajectoryResult trajectory(Scheme scheme, double duration, const device::DeviceParams& dev,
                            const TrajectoryOptions& options) {
  dev.validate();
  if (scheme == Scheme::kDynamical) throw ConfigError("trajectory: scheme must be superadiabatic or adiabatic");
  if (!(duration >= 10.0 * options.dt)) throw ConfigError("trajectory: duration must be at least 10 dt");
  if (options.stride < 1) throw ConfigError("trajectory: stride must be positive");
  const double omega0 = options.omega0 ? *options.omega0 : pulses::default_omega0(dev.g, duration);
  const EffectiveRun run = scheme_hamiltonian(scheme, omega0, duration, options.dt, 1.0, 1.0);
  if (run.max_coupling > pulses::coupling_ceiling(dev.g) * 0.5 * (1.0 + 1e-12))
    throw NumericalError("requested coupling exceeds Bessel ceiling");

  const int upper = dev.levels;
  const int lower = 1;
  TrajectoryResult out;
  out.scheme = scheme;
  std::vector<DensityMatrix> rhos;
  if (options.decoherence) {
    const auto h = embed_pair(run.h, dev.dim(), upper, lower);
    const auto rho0 = operators::pure_density(operators::basis_state(dev.dim(), lower));
    auto r = dynamics::propagate_lindblad(h, device::collapse_operators(dev), rho0, duration, options.dt,
                                          options.stride);
    out.times = std::move(r.times);
    rhos = std::move(r.densities);
  } else {
    auto r = dynamics::propagate_unitary(run.h, duration, options.dt, operators::basis_state(2, 1), options.stride);
    out.times = std::move(r.times);
    for (const auto& psi : r.states) {
      operators::QuantumState full = operators::QuantumState::Zero(dev.dim());
      full(upper) = psi(0);
      full(lower) = psi(1);
      rhos.push_back(operators::pure_density(full));
    }
  }
  for (const auto& rho : rhos) {
    out.bloch.push_back(options.emulate_tomography ? tomography(rho, upper, lower) : bloch_vector(rho, upper, lower));
    out.upper_population.push_back(rho(upper, upper).real());
  }
  return out;
}

double robustness_point(Scheme scheme, double a, double b, const device::DeviceParams& dev,
                        const RobustnessOptions& options) {
  dev.validate();
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("robustness: scale factors must be positive");
  const double omega_xc = scheme == Scheme::kDynamical && options.pi_area_dynamical
                              ? std::numbers::pi / (2.0 * options.t_c)
                              : options.omega_xc_over_g * dev.g;
  // Omega_x is the exchange rate; the 1/2 sigma_x convention doubles it.
  const EffectiveRun run = scheme_hamiltonian(scheme, 2.0 * omega_xc, options.t_c, options.dt, a, b);
  if (run.max_coupling > dev.g * pulses::kBesselPeakValue * (1.0 + 1e-12))
    return std::numeric_limits<double>::quiet_NaN();

  const int upper = dev.levels;
  const int lower = 1;
  if (options.decoherence) {
    const auto h = embed_pair(run.h, dev.dim(), upper, lower);
    const auto rho0 = operators::pure_density(operators::basis_state(dev.dim(), lower));
    const auto r = dynamics::propagate_lindblad(h, device::collapse_operators(dev), rho0, run.duration, options.dt);
    return (*r.final_density)(upper, upper).real();
  }
  const auto r = dynamics::propagate_unitary(run.h, run.duration, options.dt, operators::basis_state(2, 1));
  return std::norm((*r.final_state)(0));
}

RobustnessGrid robustness_scan(Scheme scheme, const std::vector<double>& omega_axis,
                               const std::vector<double>& time_axis, const device::DeviceParams& dev,
                               const RobustnessOptions& options) {
  auto increasing = [](const std::vector<double>& v) {
    if (v.empty()) return false;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) return false;
    return true;
  };
  if (!increasing(omega_axis) || !increasing(time_axis))
    throw ConfigError("robustness grid axes must be non-empty and strictly increasing");
  RobustnessGrid grid;
  grid.scheme = scheme;
  grid.decoherence = options.decoherence;
  grid.omega_axis = omega_axis;
  grid.time_axis = time_axis;
  grid.fidelity.assign(omega_axis.size(), std::vector<double>(time_axis.size()));
  for (std::size_t i = 0; i < omega_axis.size(); ++i)
    for (std::size_t j = 0; j < time_axis.size(); ++j)
      grid.fidelity[i][j] = robustness_point(scheme, omega_axis[i], time_axis[j], dev, options);
  return grid;
}

}  // namespace sagate::experiments
