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

#include <functional>
#include <optional>
#include <vector>

#include "sagate/device.hpp"
#include "sagate/operators.hpp"
#include "sagate/pulses.hpp"

namespace sagate::dynamics {

using operators::DensityMatrix;
using operators::Operator;
using operators::QuantumState;

/// H(t) = constant + sum_k coeff_k(t) op_k with Hermitian op_k and real coefficients.
struct TimeDependentHamiltonian {
  struct Term {
    Operator op;
    std::function<double(double)> coeff;
  };

  int dim = 0;
  Operator constant;
  std::vector<Term> terms;

  explicit TimeDependentHamiltonian(int d = 0);
  void add(Operator op, std::function<double(double)> coeff);
  Operator at(double t) const;
};

enum class Integrator {
  kMidpoint,         // exp(-i H(t + dt/2) dt)
  kCommutatorFree4,  // two exponentials at the Gauss points, fourth order
};

struct PropagationResult {
  std::vector<double> times;
  std::vector<QuantumState> states;
  std::vector<DensityMatrix> densities;
  std::optional<QuantumState> final_state;
  std::optional<DensityMatrix> final_density;
  std::optional<Operator> unitary;
};

/// Number of steps for duration T at nominal step dt; rejects grids where dt
/// does not divide T to within half a step.
int step_count(double duration, double dt);

/// Piecewise-constant propagation from t_start to t_start + T. Without psi0 the
/// accumulated unitary is returned. With stride > 0 the state is recorded
/// every `stride` steps, including t_start and the final time.
PropagationResult propagate_unitary(const TimeDependentHamiltonian& h, double duration, double dt,
                                    const std::optional<QuantumState>& psi0, int stride = 0,
                                    double t_start = 0.0, Integrator method = Integrator::kMidpoint);

/// Fixed-step RK4 on the Lindblad equation. Re-symmetrizes rho each step and
/// throws NumericalError "step size too large" if the trace drifts by more
/// than 1e-5.
PropagationResult propagate_lindblad(const TimeDependentHamiltonian& h, const device::CollapseSet& c,
                                     const DensityMatrix& rho0, double duration, double dt, int stride = 0,
                                     double t_start = 0.0);

/// Superoperator (column-stacking convention, vec(A X B) = (B^T kron A) vec(X))
/// of the Lindblad evolution over [t_start, t_start + T], integrated by RK4.
Operator lindblad_superoperator(const TimeDependentHamiltonian& h, const device::CollapseSet& c,
                                double duration, double dt, double t_start = 0.0);

DensityMatrix apply_superoperator(const Operator& s, const DensityMatrix& rho);
/// Superoperator of rho -> U rho U^dagger.
Operator unitary_superoperator(const Operator& u);

/// Lab-frame Hamiltonian sum_i [w_i n_i + (eta_i/2) n_i (n_i - 1)]
/// + g (a1^dag a2 + a1 a2^dag) + f(eps(t)) n1, with eps interpolated cubically
/// from the waveform samples.
TimeDependentHamiltonian build_lab_hamiltonian(const device::DeviceParams& dev,
                                               const pulses::Waveform& wave);

/// Phases phi_k(t) of the frame U_f(t) = exp(i[(w1 n1 + w2 n2) t + F(t) n1
/// + sum_i (eta_i/2) n_i (n_i - 1) t]) for every product basis state, given F(t).
std::vector<double> frame_phases(const device::DeviceParams& dev, double f_value, double t);

/// U_f as a diagonal matrix.
Operator frame_operator(const device::DeviceParams& dev, double f_value, double t);

/// Eigenbasis of the idle Hamiltonian (bare + static exchange). Column k is
/// the dressed state continuously connected to bare state k, phase chosen so
/// its k-th component is real and positive.
struct DressedBasis {
  Operator vectors;
  Eigen::VectorXd energies;
};
DressedBasis dressed_basis(const device::DeviceParams& dev);

/// F(t) from waveform samples (cubic Hermite on F and Fdot). Zero outside the pulse support.
double waveform_phase(const pulses::Waveform& wave, double t);

/// The lab Hamiltonian expressed in the frame U_f: only the exchange coupling
/// remains, with time-dependent phases. Same physics, slower coefficients.
TimeDependentHamiltonian build_rotating_lab_hamiltonian(const device::DeviceParams& dev,
                                                        const pulses::Waveform& wave);

/// U_f(t) applied to a state or an operator on the full space.
QuantumState to_rotating_frame(const device::DeviceParams& dev, const pulses::Waveform& wave,
                               const QuantumState& psi, double t);

/// First-order kick K of the off-resonant sidebands at modulation sample
/// `index`, in the frame U_f. A state psi in that frame maps to the slow
/// (effective) frame as exp(iK) psi; the residual is second order in g/carrier.
Operator micromotion_generator(const device::DeviceParams& dev, const pulses::ModulationParams& mod,
                               std::size_t index);
/// exp(iK) for the generator above.
Operator micromotion_operator(const device::DeviceParams& dev, const pulses::ModulationParams& mod,
                              std::size_t index);

/// 2x2 effective Hamiltonian from samples on a grid of step dt:
/// 1/2 [delta sz + magnitude (cos phase sx + sin phase sy)], cubic interpolation.
/// Basis order (upper, lower) of the driven transition.
TimeDependentHamiltonian effective_hamiltonian(double dt, double t_offset, const std::vector<double>& delta,
                                               const std::vector<double>& magnitude,
                                               const std::vector<double>& phase);
/// 2x2 effective Hamiltonian 1/2 [Delta sz + Omega (cos Phi sx + sin Phi sy)]
/// with (Omega, Phi) = (omega_s, phi + phi_s). Time is measured from t_offset.
TimeDependentHamiltonian build_effective_hamiltonian(const pulses::SuperadiabaticSchedule& sched,
                                                     double t_offset = 0.0);
/// Same with (Omega, Phi) = (omega_r, phi).
TimeDependentHamiltonian build_effective_hamiltonian(const pulses::BaseSchedule& sched,
                                                     double t_offset = 0.0);

struct GateFidelityReport {
  double process_fidelity = 0.0;
  double average_gate_fidelity = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  double leakage = 0.0;
};

/// Indices of |00>, |01>, |10>, |11> in a two-transmon space of `levels` each.
std::vector<int> computational_indices(int levels);

/// Projects u onto the computational subspace M; optionally maximizes
/// |Tr(target^dag Z(z1, z2) M)| over local Z phases (64x64 grid, then
/// Nelder-Mead). F_avg = (Tr(M' M'^dag) + |Tr(target^dag M')|^2) / (d (d + 1)),
/// M' = Z M, d = 4, which reduces to (|Tr|^2 + d) / (d (d + 1)) for unitary M'.
GateFidelityReport process_fidelity(const Operator& u, const Operator& target, bool correct_local_phases);

/// diag(exp(i (z1 q1 + z2 q2))) on the full space; level-2 states follow n_i.
Operator local_phase_operator(int levels, double z1, double z2);

}  // namespace sagate::dynamics
