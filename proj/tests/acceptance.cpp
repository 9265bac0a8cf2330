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

// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "sagate/device.hpp"
#include "sagate/dynamics.hpp"
#include "sagate/experiments.hpp"
#include "sagate/pulses.hpp"

using namespace sagate;
using namespace sagate::experiments;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double circular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * oracle::kPi)); }

Outcome bessel_calibration() {
  const auto dev = device::preset("swap-point");
  const auto r = calibrate_effective_coupling(dev, default_calibration_amplitudes(20), 1e-6);
  const double g_err = std::abs(r.fitted_g / dev.g - 1.0);
  const double peak_err = std::abs(r.max_g_eff / (3.6 * oracle::kMHz) - 1.0);
  const double tql = r.t_ql * 1e9;
  return {g_err <= 0.02 && peak_err <= 0.05 && std::abs(tql - 69.0) <= 2.0,
          "fitted g/2pi " + fmt("%.4f", r.fitted_g / oracle::kMHz) + " MHz, max g_eff/2pi " +
              fmt("%.4f", r.max_g_eff / oracle::kMHz) + " MHz, T_QL " + fmt("%.2f", tql) + " ns"};
}

Outcome superadiabatic_swap() {
  const auto dev = device::preset("swap-point");
  const auto sa = trajectory(Scheme::kSuperadiabatic, 80e-9, dev);
  double max_y = 0.0;
  for (const auto& b : sa.bloch) max_y = std::max(max_y, std::abs(b[1]));
  const double p_sa = sa.upper_population.back();
  const double p_ad80 = trajectory(Scheme::kAdiabatic, 80e-9, dev).upper_population.back();
  const double p_ad690 = trajectory(Scheme::kAdiabatic, 690e-9, dev).upper_population.back();
  return {p_sa >= 0.999 && max_y <= 0.02 && p_ad80 < 0.9 && p_ad690 >= 0.98,
          "SA 80 ns P " + fmt("%.5f", p_sa) + ", max|y| " + fmt("%.2e", max_y) + "; adiabatic 80 ns " +
              fmt("%.4f", p_ad80) + ", 690 ns " + fmt("%.4f", p_ad690)};
}

Outcome frame_check() {
  const auto r = frame_equivalence(device::preset("swap-point"), 80e-9);
  return {r.max_deviation <= 5e-3, "max |P_lab - P_eff| " + fmt("%.2e", r.max_deviation) + " at dt 0.1 ns"};
}

Outcome robustness() {
  const auto dev = device::preset("swap-point");
  const RobustnessOptions o;
  const auto axis = linspace(0.9, 1.1, 21);
  const auto sa = robustness_scan(Scheme::kSuperadiabatic, axis, axis, dev, o);
  const auto dyn = robustness_scan(Scheme::kDynamical, axis, axis, dev, o);
  double sa_min = 1.0, dyn_min = 1.0;
  bool diagonal = true;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j < axis.size(); ++j) {
      sa_min = std::min(sa_min, sa.fidelity[i][j]);
      dyn_min = std::min(dyn_min, dyn.fidelity[i][j]);
    }
    diagonal = diagonal && sa.fidelity[i][i] >= dyn.fidelity[i][i] - 1e-9;  // both are 1 at the centre
  }
  const double corner = dyn.fidelity.back().back();
  const double analytic = oracle::rabi_transfer(1.21 * oracle::kPi / (2.0 * o.t_c), o.t_c);
  return {sa_min > dyn_min && diagonal && std::abs(corner - analytic) <= 0.02,
          "worst SA " + fmt("%.4f", sa_min) + " vs dynamical " + fmt("%.4f", dyn_min) + ", diagonal dominance " +
              (diagonal ? "yes" : "no") + ", dynamical corner " + fmt("%.4f", corner) + " (analytic " +
              fmt("%.4f", analytic) + ")"};
}

Outcome ideal_cz() {
  const auto dev = device::preset("cz-point");
  const auto r = cz_gate(dev, 60e-9);
  const auto ramsey = ramsey_conditional_phase(r.unitary, 3, linspace(0.0, 2.0 * oracle::kPi, 37));
  const double dphi = circular_distance(ramsey.conditional_phase, oracle::kPi);
  return {r.report.process_fidelity >= 0.999 && r.report.leakage <= 5e-4 && dphi <= 0.05,
          "F_pro " + fmt("%.5f", r.report.process_fidelity) + ", leakage " + fmt("%.2e", r.report.leakage) +
              ", Ramsey phase " + fmt("%.4f", ramsey.conditional_phase) + " rad"};
}

Outcome decoherent_cz() {
  const auto dev = device::preset("cz-point");
  const std::vector<int> m = {1, 2, 4, 6, 8, 10, 14, 18, 24, 30, 40};
  const auto model = lindblad_gate_model(dev);
  const auto ref = run_rb(RbVariant::kReference, m, 60, 7, model);
  const auto cz = run_rb(RbVariant::kInterleavedCz, m, 60, 7, model);
  const auto idle = run_rb(RbVariant::kInterleavedIdle, m, 60, 7, model);
  const auto r_cz = interleaved_error_rate(ref, cz);
  const auto r_idle = interleaved_error_rate(ref, idle);
  if (!r_cz || !r_idle) return {false, "RB fit did not converge"};
  const double f_idle = 1.0 - *r_idle;
  const bool pass = *r_cz >= 0.043 && *r_cz <= 0.073 && std::abs(f_idle - 0.950) <= 0.015 &&
                    std::abs(*r_cz - *r_idle) <= 0.02;
  return {pass, "r_CZ " + fmt("%.2f", 100.0 * *r_cz) + "%, idle fidelity " + fmt("%.2f", 100.0 * f_idle) +
                    "%, |r_CZ - r_idle| " + fmt("%.4f", std::abs(*r_cz - *r_idle))};
}

Outcome rb_oracle() {
  const std::vector<int> m = {1, 2, 4, 6, 8, 10, 14, 18, 24, 30, 40};
  bool pass = true;
  std::string detail;
  for (double p0 : {0.95, 0.98, 0.995}) {
    const auto r = run_rb(RbVariant::kReference, m, 60, 11, depolarizing_gate_model(p0));
    pass = pass && r.fit.converged && std::abs(r.fit.p - p0) <= 0.01;
    detail += "p0 " + fmt("%.3f", p0) + " -> " + fmt("%.4f", r.fit.p) + "; ";
  }
  double worst = 0.0;
  for (auto v : {RbVariant::kReference, RbVariant::kInterleavedCz, RbVariant::kInterleavedIdle}) {
    const auto r = run_rb(v, m, 60, 11, ideal_gate_model());
    for (double p : r.mean) worst = std::max(worst, std::abs(p - 1.0));
  }
  pass = pass && worst <= 1e-9;
  return {pass, detail + "ideal max |P - 1| " + fmt("%.1e", worst)};
}

Operator random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = operators::Complex(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

Outcome property_suites() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  double unitarity = 0.0, composition = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 1 + trial % 16;
    const Operator h = random_hermitian(dim, rng);
    const double t1 = 1.5 + 1.5 * u(rng), t2 = 1.5 + 1.5 * u(rng);
    const Operator a = operators::expm_propagator(h, t1);
    unitarity = std::max(unitarity, oracle::max_abs(a.adjoint() * a - Operator::Identity(dim, dim)));
    composition = std::max(composition, oracle::max_abs(operators::expm_propagator(h, t1 + t2) -
                                                        a * operators::expm_propagator(h, t2)));
  }

  // single-qubit decay on Q1 with H = 0
  auto idle = [](double t1, double tphi, const operators::DensityMatrix& rho, double t) {
    device::DeviceParams d = device::preset("swap-point");
    d.t1_q1 = t1;
    d.tphi_q1 = tphi;
    d.t1_q2 = d.tphi_q2 = device::kInfiniteTime;
    dynamics::TimeDependentHamiltonian h(d.dim());
    return *dynamics::propagate_lindblad(h, device::collapse_operators(d), rho, t, 1e-9).final_density;
  };
  operators::DensityMatrix excited = operators::DensityMatrix::Zero(4, 4), plus = excited;
  excited(2, 2) = 1.0;
  plus(0, 0) = plus(2, 2) = plus(0, 2) = plus(2, 0) = 0.5;
  const double t1_err = std::abs(idle(4.06e-6, device::kInfiniteTime, excited, 4.06e-6)(2, 2).real() - std::exp(-1.0));
  const double tphi_err =
      std::abs(idle(device::kInfiniteTime, 620e-9, plus, 620e-9)(0, 2).real() - 0.5 * std::exp(-1.0));

  double flux = 0.0, bessel = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double c1 = oracle::kGHz * (0.5 + std::abs(u(rng)));
    const device::FluxCoefficients c{c1, 0.1 * c1 * u(rng), 0.05 * c1 * u(rng)};
    const double eps = 0.8 * u(rng);
    flux = std::max(flux, std::abs(device::invert_flux_response(device::flux_response(eps, c), c) - eps));
    const double x = oracle::bessel_j1_series(pulses::kBesselPeakArgument * 0.5 * (1.0 + u(rng)));
    bessel = std::max(bessel, std::abs(oracle::bessel_j1_series(pulses::invert_bessel_j1(x)) - x));
  }

  // Landau-Zener sweep, successive step halvings
  const double t = 100e-9;
  dynamics::TimeDependentHamiltonian lz(2);
  lz.add(0.5 * operators::pauli_z(), [t](double s) { return 2.0 * oracle::kPi * 1e15 * (s - 0.5 * t); });
  lz.add(0.5 * 2.0 * oracle::kPi * 10e6 * operators::pauli_x(), [](double) { return 1.0; });
  auto run = [&](double dt) { return *dynamics::propagate_unitary(lz, t, dt, operators::basis_state(2, 0)).final_state; };
  const auto a = run(0.2e-9), b = run(0.1e-9), c = run(0.05e-9);
  const double order = std::log2((a - b).norm() / (b - c).norm());

  const bool pass = unitarity <= 1e-10 && composition <= 1e-9 && t1_err <= 1e-4 && tphi_err <= 1e-6 &&
                    flux <= 1e-8 && bessel <= 1e-10 && order >= 1.95;
  return {pass, "unitarity " + fmt("%.1e", unitarity) + ", composition " + fmt("%.1e", composition) + ", T1 " +
                    fmt("%.1e", t1_err) + ", Tphi " + fmt("%.1e", tphi_err) + ", flux " + fmt("%.1e", flux) +
                    ", Bessel " + fmt("%.1e", bessel) + ", step-halving order " + fmt("%.3f", order)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
      {"Bessel calibration", bessel_calibration},
      {"superadiabatic SWAP", superadiabatic_swap},
      {"frame equivalence", frame_check},
      {"robustness", robustness},
      {"ideal SA-CZ", ideal_cz},
      {"SA-CZ with decoherence", decoherent_cz},
      {"RB oracle", rb_oracle},
      {"property suites", property_suites},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sagate acceptance checks"};
  std::vector<int> selected;
  app.add_option("-c,--criterion", selected, "criteria to run (default: all)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (int i = 1; i <= 8; ++i) selected.push_back(i);

  int failures = 0;
  for (int id : selected) {
    const auto& [name, check] = criteria()[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d (%s): %s - %s [%.1f s]\n", id, name.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
