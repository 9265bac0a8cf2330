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

#include "sagate/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>

#include "sagate/error.hpp"
#include "sagate/numeric.hpp"

namespace sagate::dynamics {

using operators::Complex;
using operators::kI;

TimeDependentHamiltonian::TimeDependentHamiltonian(int d) : dim(d), constant(Operator::Zero(d, d)) {}

void TimeDependentHamiltonian::add(Operator op, std::function<double(double)> coeff) {
  if (op.rows() != dim || op.cols() != dim) throw ConfigError("Hamiltonian term has wrong dimension");
  if (!operators::is_hermitian(op)) throw ConfigError("Hamiltonian term is not Hermitian");
  terms.push_back({std::move(op), std::move(coeff)});
}

Operator TimeDependentHamiltonian::at(double t) const {
  Operator h = constant;
  for (const auto& term : terms) h += term.coeff(t) * term.op;
  return h;
}

int step_count(double duration, double dt) {
  if (!(duration > 0.0) || !(dt > 0.0)) throw ConfigError("duration and dt must be positive");
  const double ratio = duration / dt;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 0.5)
    throw ConfigError("dt does not divide the duration");
  return static_cast<int>(steps);
}

PropagationResult propagate_unitary(const TimeDependentHamiltonian& h, double duration, double dt,
                                    const std::optional<QuantumState>& psi0, int stride, double t_start,
                                    Integrator method) {
  const int steps = step_count(duration, dt);
  const double step = duration / steps;
  PropagationResult result;

  static const double kGaussOffset = std::sqrt(3.0) / 6.0;
  static const double kAlpha1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
  static const double kAlpha2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

  auto step_propagator = [&](double t) -> Operator {
    if (method == Integrator::kMidpoint) return operators::expm_propagator(h.at(t + 0.5 * step), step);
    const Operator h1 = h.at(t + (0.5 - kGaussOffset) * step);
    const Operator h2 = h.at(t + (0.5 + kGaussOffset) * step);
    const Operator first = operators::expm_propagator(kAlpha2 * h1 + kAlpha1 * h2, step);
    const Operator second = operators::expm_propagator(kAlpha1 * h1 + kAlpha2 * h2, step);
    return second * first;
  };

  if (psi0) {
    if (psi0->size() != h.dim) throw ConfigError("propagate_unitary: state dimension mismatch");
    QuantumState psi = *psi0;
    if (stride > 0) {
      result.times.push_back(t_start);
      result.states.push_back(psi);
    }
    for (int k = 0; k < steps; ++k) {
      const double t = t_start + k * step;
      psi = step_propagator(t) * psi;
      if (stride > 0 && ((k + 1) % stride == 0 || k + 1 == steps)) {
        result.times.push_back(t + step);
        result.states.push_back(psi);
      }
    }
    result.final_state = psi;
  } else {
    Operator u = Operator::Identity(h.dim, h.dim);
    for (int k = 0; k < steps; ++k) u = step_propagator(t_start + k * step) * u;
    result.unitary = u;
  }
  return result;
}

namespace {

struct Dissipator {
  std::vector<Operator> jumps;
  std::vector<Operator> jumps_dag;
  Operator decay;  // sum_k L_k^dag L_k

  Dissipator(const device::CollapseSet& c, int dim) : decay(Operator::Zero(dim, dim)) {
    for (const auto& l : c.ops) {
      if (l.rows() != dim) throw ConfigError("collapse operator dimension mismatch");
      jumps.push_back(l);
      jumps_dag.push_back(l.adjoint());
      decay += l.adjoint() * l;
    }
  }

  DensityMatrix rhs(const Operator& hmat, const DensityMatrix& rho) const {
    const Operator heff = hmat - 0.5 * kI * decay;
    DensityMatrix out = -kI * (heff * rho - rho * heff.adjoint());
    for (std::size_t k = 0; k < jumps.size(); ++k) out += jumps[k] * rho * jumps_dag[k];
    return out;
  }
};

}  // namespace

PropagationResult propagate_lindblad(const TimeDependentHamiltonian& h, const device::CollapseSet& c,
                                     const DensityMatrix& rho0, double duration, double dt, int stride,
                                     double t_start) {
  if (rho0.rows() != h.dim || rho0.cols() != h.dim)
    throw ConfigError("propagate_lindblad: density dimension mismatch");
  const int steps = step_count(duration, dt);
  const double step = duration / steps;
  const Dissipator diss(c, h.dim);
  const Complex trace0 = rho0.trace();

  PropagationResult result;
  DensityMatrix rho = rho0;
  if (stride > 0) {
    result.times.push_back(t_start);
    result.densities.push_back(rho);
  }
  for (int k = 0; k < steps; ++k) {
    const double t = t_start + k * step;
    const Operator h0 = h.at(t);
    const Operator hm = h.at(t + 0.5 * step);
    const Operator h1 = h.at(t + step);
    const DensityMatrix k1 = diss.rhs(h0, rho);
    const DensityMatrix k2 = diss.rhs(hm, rho + 0.5 * step * k1);
    const DensityMatrix k3 = diss.rhs(hm, rho + 0.5 * step * k2);
    const DensityMatrix k4 = diss.rhs(h1, rho + step * k3);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (std::abs(rho.trace() - trace0) > 1e-5 || !rho.allFinite())
      throw NumericalError("step size too large");
    if (stride > 0 && ((k + 1) % stride == 0 || k + 1 == steps)) {
      result.times.push_back(t + step);
      result.densities.push_back(rho);
    }
  }
  result.final_density = rho;
  return result;
}

Operator lindblad_superoperator(const TimeDependentHamiltonian& h, const device::CollapseSet& c,
                                double duration, double dt, double t_start) {
  const int d = h.dim;
  const int steps = step_count(duration, dt);
  const double step = duration / steps;
  const Operator id = Operator::Identity(d, d);
  auto commutator = [&](const Operator& op) -> Operator {
    return -kI * (operators::kron(id, op) - operators::kron(op.transpose(), id));
  };

  Operator fixed = commutator(h.constant);
  for (const auto& l : c.ops) {
    const Operator ldl = l.adjoint() * l;
    fixed += operators::kron(l.conjugate(), l) - 0.5 * operators::kron(id, ldl) -
             0.5 * operators::kron(ldl.transpose(), id);
  }
  std::vector<Operator> parts;
  parts.reserve(h.terms.size());
  for (const auto& term : h.terms) parts.push_back(commutator(term.op));
  auto generator = [&](double t) -> Operator {
    Operator l = fixed;
    for (std::size_t k = 0; k < parts.size(); ++k) l += h.terms[k].coeff(t) * parts[k];
    return l;
  };

  Operator s = Operator::Identity(d * d, d * d);
  for (int k = 0; k < steps; ++k) {
    const double t = t_start + k * step;
    const Operator l0 = generator(t);
    const Operator lm = generator(t + 0.5 * step);
    const Operator l1 = generator(t + step);
    const Operator k1 = l0 * s;
    const Operator k2 = lm * (s + 0.5 * step * k1);
    const Operator k3 = lm * (s + 0.5 * step * k2);
    const Operator k4 = l1 * (s + step * k3);
    s += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return s;
}

DensityMatrix apply_superoperator(const Operator& s, const DensityMatrix& rho) {
  const Eigen::Index d = rho.rows();
  if (s.rows() != d * d) throw ConfigError("superoperator dimension mismatch");
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
  Eigen::VectorXcd out = s * v;
  return Eigen::Map<const DensityMatrix>(out.data(), d, d);
}

Operator unitary_superoperator(const Operator& u) { return operators::kron(u.conjugate(), u); }

namespace {

std::vector<std::array<int, 2>> occupations(int levels) {
  std::vector<std::array<int, 2>> occ;
  for (int k1 = 0; k1 < levels; ++k1)
    for (int k2 = 0; k2 < levels; ++k2) occ.push_back({k1, k2});
  return occ;
}

Operator exchange_coupling(const device::DeviceParams& dev) {
  const auto dims = dev.dims();
  const Operator a1 = operators::embed(operators::lowering(dev.levels), 0, dims);
  const Operator a2 = operators::embed(operators::lowering(dev.levels), 1, dims);
  return dev.g * (a1.adjoint() * a2 + a1 * a2.adjoint());
}

Operator bare_hamiltonian(const device::DeviceParams& dev) {
  const int d = dev.dim();
  Operator h = Operator::Zero(d, d);
  const auto occ = occupations(dev.levels);
  for (int k = 0; k < d; ++k) {
    const double n1 = occ[k][0];
    const double n2 = occ[k][1];
    h(k, k) = dev.omega1 * n1 + dev.omega2 * n2 + 0.5 * dev.eta1 * n1 * (n1 - 1.0) +
              0.5 * dev.eta2 * n2 * (n2 - 1.0);
  }
  return h;
}

}  // namespace

TimeDependentHamiltonian build_lab_hamiltonian(const device::DeviceParams& dev, const pulses::Waveform& wave) {
  dev.validate();
  if (wave.size() < 2) throw ConfigError("build_lab_hamiltonian: waveform too short");
  TimeDependentHamiltonian h(dev.dim());
  h.constant = bare_hamiltonian(dev) + exchange_coupling(dev);
  auto samples = std::make_shared<const pulses::Waveform>(wave);
  const device::FluxCoefficients flux = dev.flux;
  h.add(operators::embed(operators::number(dev.levels), 0, dev.dims()), [samples, flux](double t) {
    if (t < 0.0 || t > samples->duration()) return 0.0;
    return device::flux_response(numeric::interp_cubic(samples->eps, samples->dt, t), flux);
  });
  return h;
}

std::vector<double> frame_phases(const device::DeviceParams& dev, double f_value, double t) {
  const auto occ = occupations(dev.levels);
  std::vector<double> phases(occ.size());
  for (std::size_t k = 0; k < occ.size(); ++k) {
    const double n1 = occ[k][0];
    const double n2 = occ[k][1];
    phases[k] = (dev.omega1 * n1 + dev.omega2 * n2 + 0.5 * dev.eta1 * n1 * (n1 - 1.0) +
                 0.5 * dev.eta2 * n2 * (n2 - 1.0)) * t +
                f_value * n1;
  }
  return phases;
}

Operator frame_operator(const device::DeviceParams& dev, double f_value, double t) {
  const auto phases = frame_phases(dev, f_value, t);
  Operator u = Operator::Zero(dev.dim(), dev.dim());
  for (std::size_t k = 0; k < phases.size(); ++k) u(k, k) = std::exp(kI * phases[k]);
  return u;
}

DressedBasis dressed_basis(const device::DeviceParams& dev) {
  dev.validate();
  const int d = dev.dim();
  Eigen::SelfAdjointEigenSolver<Operator> es(bare_hamiltonian(dev) + exchange_coupling(dev));
  DressedBasis out;
  out.vectors = Operator::Zero(d, d);
  out.energies = Eigen::VectorXd::Zero(d);
  std::vector<bool> taken(d, false);
  for (int k = 0; k < d; ++k) {
    // Bare state k gets the unused eigenvector with the largest overlap.
    int best = -1;
    for (int j = 0; j < d; ++j)
      if (!taken[j] && (best < 0 || std::abs(es.eigenvectors()(k, j)) > std::abs(es.eigenvectors()(k, best))))
        best = j;
    taken[best] = true;
    const operators::Complex c = es.eigenvectors()(k, best);
    out.vectors.col(k) = es.eigenvectors().col(best) * (std::abs(c) / c);
    out.energies(k) = es.eigenvalues()(best);
  }
  return out;
}

double waveform_phase(const pulses::Waveform& wave, double t) {
  if (wave.size() == 0) return 0.0;
  if (t <= 0.0) return wave.f.front();
  if (t >= wave.duration()) return wave.f.back();
  return numeric::interp_hermite(wave.f, wave.f_dot, wave.dt, t);
}

TimeDependentHamiltonian build_rotating_lab_hamiltonian(const device::DeviceParams& dev,
                                                        const pulses::Waveform& wave) {
  dev.validate();
  const int d = dev.dim();
  const Operator v = exchange_coupling(dev);
  TimeDependentHamiltonian h(d);
  auto samples = std::make_shared<const pulses::Waveform>(wave);
  const auto occ = occupations(dev.levels);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const double vab = v(a, b).real();
      if (vab == 0.0) continue;
      // Frame phase difference phi_a - phi_b is linear in t plus (n1_a - n1_b) F(t).
      const double n1a = occ[a][0], n2a = occ[a][1], n1b = occ[b][0], n2b = occ[b][1];
      const double rate = dev.omega1 * (n1a - n1b) + dev.omega2 * (n2a - n2b) +
                          0.5 * dev.eta1 * (n1a * (n1a - 1) - n1b * (n1b - 1)) +
                          0.5 * dev.eta2 * (n2a * (n2a - 1) - n2b * (n2b - 1));
      const double dn1 = n1a - n1b;
      Operator x = Operator::Zero(d, d);
      x(a, b) = x(b, a) = 1.0;
      Operator y = Operator::Zero(d, d);
      y(a, b) = kI;
      y(b, a) = -kI;
      h.add(x, [=](double t) { return vab * std::cos(rate * t + dn1 * waveform_phase(*samples, t)); });
      h.add(y, [=](double t) { return vab * std::sin(rate * t + dn1 * waveform_phase(*samples, t)); });
    }
  }
  return h;
}

QuantumState to_rotating_frame(const device::DeviceParams& dev, const pulses::Waveform& wave,
                               const QuantumState& psi, double t) {
  const auto phases = frame_phases(dev, waveform_phase(wave, t), t);
  QuantumState out = psi;
  for (Eigen::Index k = 0; k < out.size(); ++k) out(k) *= std::exp(kI * phases[k]);
  return out;
}

Operator micromotion_generator(const device::DeviceParams& dev, const pulses::ModulationParams& mod,
                               std::size_t index) {
  constexpr int kOrders = 12;
  dev.validate();
  if (index >= mod.size()) throw ConfigError("micromotion_generator: sample index out of range");
  const int d = dev.dim();
  const Operator v = exchange_coupling(dev);
  const auto occ = occupations(dev.levels);
  const double t = mod.times[index];
  const double amplitude = mod.amplitude[index];
  const double slow = mod.delta_l[index] + mod.beta_l[index];
  Operator k = Operator::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double vab = v(a, b).real();
      if (a == b || vab == 0.0) continue;
      const double n1a = occ[a][0], n2a = occ[a][1], n1b = occ[b][0], n2b = occ[b][1];
      const double rate = dev.omega1 * (n1a - n1b) + dev.omega2 * (n2a - n2b) +
                          0.5 * dev.eta1 * (n1a * (n1a - 1) - n1b * (n1b - 1)) +
                          0.5 * dev.eta2 * (n2a * (n2a - 1) - n2b * (n2b - 1));
      const int dn1 = static_cast<int>(n1a - n1b);
      for (int n = -kOrders; n <= kOrders; ++n) {
        const double nu = rate + n * mod.carrier;
        if (std::abs(nu) < 0.5 * std::abs(mod.carrier)) continue;
        // exp(i dn1 A sin x) = sum_n J_n(dn1 A) exp(i n x), J_n(-z) = (-1)^n J_n(z).
        double jn = std::cyl_bessel_j(static_cast<double>(std::abs(n)), amplitude);
        if (n < 0 && (n % 2)) jn = -jn;
        if (dn1 < 0 && (n % 2)) jn = -jn;
        k(a, b) += vab * jn * std::exp(kI * (nu * t + n * slow)) / (kI * nu);
      }
    }
  }
  return 0.5 * (k + k.adjoint());
}

Operator micromotion_operator(const device::DeviceParams& dev, const pulses::ModulationParams& mod,
                              std::size_t index) {
  return operators::expm_propagator(micromotion_generator(dev, mod, index), -1.0);
}

TimeDependentHamiltonian effective_hamiltonian(double dt, double t_offset, const std::vector<double>& delta,
                                               const std::vector<double>& magnitude,
                                               const std::vector<double>& phase) {
  if (magnitude.size() != delta.size() || phase.size() != delta.size())
    throw ConfigError("effective_hamiltonian: sample arrays differ in length");
  const std::size_t n = delta.size();
  auto dz = std::make_shared<std::vector<double>>(n);
  auto dx = std::make_shared<std::vector<double>>(n);
  auto dy = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i) {
    (*dz)[i] = 0.5 * delta[i];
    (*dx)[i] = 0.5 * magnitude[i] * std::cos(phase[i]);
    (*dy)[i] = 0.5 * magnitude[i] * std::sin(phase[i]);
  }
  TimeDependentHamiltonian h(2);
  h.add(operators::pauli_z(), [=](double t) { return numeric::interp_cubic(*dz, dt, t - t_offset); });
  h.add(operators::pauli_x(), [=](double t) { return numeric::interp_cubic(*dx, dt, t - t_offset); });
  h.add(operators::pauli_y(), [=](double t) { return numeric::interp_cubic(*dy, dt, t - t_offset); });
  return h;
}


TimeDependentHamiltonian build_effective_hamiltonian(const pulses::SuperadiabaticSchedule& sched,
                                                     double t_offset) {
  std::vector<double> phase(sched.size());
  for (std::size_t i = 0; i < sched.size(); ++i) phase[i] = sched.phi + sched.phi_s[i];
  return effective_hamiltonian(sched.dt, t_offset, sched.delta, sched.omega_s, phase);
}

TimeDependentHamiltonian build_effective_hamiltonian(const pulses::BaseSchedule& sched, double t_offset) {
  std::vector<double> phase(sched.size(), sched.phi);
  return effective_hamiltonian(sched.dt, t_offset, sched.delta, sched.omega_r, phase);
}

std::vector<int> computational_indices(int levels) {
  return {0, 1, levels, levels + 1};
}

Operator local_phase_operator(int levels, double z1, double z2) {
  const int d = levels * levels;
  Operator z = Operator::Zero(d, d);
  for (int k1 = 0; k1 < levels; ++k1)
    for (int k2 = 0; k2 < levels; ++k2) z(k1 * levels + k2, k1 * levels + k2) = std::exp(kI * (z1 * k1 + z2 * k2));
  return z;
}

namespace {

// Minimizes f over R^2 by Nelder-Mead with fixed iteration count.
std::array<double, 2> nelder_mead(const std::function<double(double, double)>& f, std::array<double, 2> x0,
                                  double scale, int iterations) {
  std::array<std::array<double, 2>, 3> p = {x0, std::array<double, 2>{x0[0] + scale, x0[1]},
                                            std::array<double, 2>{x0[0], x0[1] + scale}};
  std::array<double, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = f(p[i][0], p[i][1]);
  for (int it = 0; it < iterations; ++it) {
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    const std::array<double, 2> c = {0.5 * (p[best][0] + p[mid][0]), 0.5 * (p[best][1] + p[mid][1])};
    auto along = [&](double s) {
      return std::array<double, 2>{c[0] + s * (p[worst][0] - c[0]), c[1] + s * (p[worst][1] - c[1])};
    };
    const auto r = along(-1.0);
    const double fr = f(r[0], r[1]);
    if (fr < v[best]) {
      const auto e = along(-2.0);
      const double fe = f(e[0], e[1]);
      if (fe < fr) {
        p[worst] = e;
        v[worst] = fe;
      } else {
        p[worst] = r;
        v[worst] = fr;
      }
    } else if (fr < v[mid]) {
      p[worst] = r;
      v[worst] = fr;
    } else {
      const auto k = along(0.5);
      const double fk = f(k[0], k[1]);
      if (fk < v[worst]) {
        p[worst] = k;
        v[worst] = fk;
      } else {
        for (int i : {mid, worst}) {
          p[i] = {0.5 * (p[i][0] + p[best][0]), 0.5 * (p[i][1] + p[best][1])};
          v[i] = f(p[i][0], p[i][1]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (v[i] < v[best]) best = i;
  return p[best];
}

}  // namespace

GateFidelityReport process_fidelity(const Operator& u, const Operator& target, bool correct_local_phases) {
  if (target.rows() != 4 || target.cols() != 4) throw ConfigError("process_fidelity: target must be 4x4");
  const auto levels = static_cast<int>(std::lround(std::sqrt(static_cast<double>(u.rows()))));
  if (levels * levels != u.rows() || levels < 2) throw ConfigError("process_fidelity: unsupported dimension");
  const auto idx = computational_indices(levels);
  Operator m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = u(idx[i], idx[j]);

  constexpr double d = 4.0;
  const Operator td = target.adjoint();
  auto overlap = [&](double z1, double z2) {
    Complex tr = 0.0;
    for (int i = 0; i < 4; ++i) {
      const int q1 = i / 2, q2 = i % 2;
      const Complex phase = std::exp(kI * (z1 * q1 + z2 * q2));
      for (int j = 0; j < 4; ++j) tr += td(j, i) * phase * m(i, j);
    }
    return std::abs(tr);
  };

  GateFidelityReport report;
  if (correct_local_phases) {
    constexpr int kGrid = 64;
    double best = -1.0;
    for (int a = 0; a < kGrid; ++a)
      for (int b = 0; b < kGrid; ++b) {
        const double z1 = 2.0 * std::numbers::pi * a / kGrid;
        const double z2 = 2.0 * std::numbers::pi * b / kGrid;
        const double val = overlap(z1, z2);
        if (val > best) {
          best = val;
          report.z1 = z1;
          report.z2 = z2;
        }
      }
    std::array<double, 2> x = {report.z1, report.z2};
    for (int round = 0; round < 30; ++round)
      x = nelder_mead([&](double a, double b) { return -overlap(a, b); }, x, 0.05 / (1 + round), 40);
    report.z1 = std::remainder(x[0], 2.0 * std::numbers::pi);
    report.z2 = std::remainder(x[1], 2.0 * std::numbers::pi);
  }
  const double tr = overlap(report.z1, report.z2);
  const double norm = m.squaredNorm();  // phases do not change Tr(M M^dag)
  report.process_fidelity = tr * tr / (d * d);
  report.average_gate_fidelity = (norm + tr * tr) / (d * (d + 1.0));
  report.leakage = 1.0 - norm / d;
  return report;
}

}  // namespace sagate::dynamics
