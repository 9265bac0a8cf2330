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

#include <doctest.h>

#include "oracles.hpp"
#include "sagate/error.hpp"
#include "sagate/experiments.hpp"

using namespace sagate;
using namespace sagate::experiments;

namespace {

const device::DeviceParams& swap_dev() {
  static const auto dev = device::preset("swap-point");
  return dev;
}

const CalibrationResult& calibration() {
  static const CalibrationResult r =
      calibrate_effective_coupling(swap_dev(), default_calibration_amplitudes(20), 1e-6);
  return r;
}

double norm3(const std::array<double, 3>& b) { return std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]); }

}  // namespace

TEST_SUITE("calibration") {
  TEST_CASE("first_maximum on an analytic detuned Rabi curve") {
    const double dt = 0.1e-9, w = 2.0 * oracle::kPi * 1.3e6, amp = 0.93;
    std::vector<double> p;
    for (int i = 0; i < 4000; ++i) p.push_back(amp * std::pow(std::sin(w * i * dt), 2));
    const auto peak = first_maximum(p, dt, 1);
    CHECK(peak.time == doctest::Approx(oracle::kPi / (2.0 * w)).epsilon(1e-4));
    CHECK(peak.value == doctest::Approx(amp).epsilon(1e-4));
    const auto none = first_maximum(std::vector<double>(100, 0.1), dt, 1);
    CHECK(none.time == 0.0);
  }

  TEST_CASE("zero amplitude gives no coupling") {
    REQUIRE(calibration().amplitudes.front() == 0.0);
    CHECK(calibration().g_eff.front() <= 1e-3 * swap_dev().g);
  }

  TEST_CASE("one-parameter fit recovers g") {
    CHECK(calibration().fitted_g / swap_dev().g == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("peak coupling and quantum limit match the quoted values") {
    CHECK(calibration().max_g_eff / oracle::kMHz == doctest::Approx(3.64).epsilon(0.05));
    CHECK(calibration().t_ql * 1e9 == doctest::Approx(69.0).epsilon(2.0 / 69.0));
  }

  TEST_CASE("property: g_eff follows g J1(A) within 2% over [0.2, 1.6]") {
    const auto& r = calibration();
    for (std::size_t i = 0; i < r.amplitudes.size(); ++i) {
      const double a = r.amplitudes[i];
      if (a < 0.2 || a > 1.6) continue;
      const double want = swap_dev().g * oracle::bessel_j1_series(a);
      CHECK(std::abs(r.g_eff[i] / want - 1.0) <= 0.02);
    }
  }

  TEST_CASE("property: T_QL identity") {
    const auto& r = calibration();
    CHECK(r.t_ql * 4.0 * r.max_g_eff / (2.0 * oracle::kPi) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(calibrate_effective_coupling(swap_dev(), {0.0, 0.5}, 30e-9),
                         doctest::Contains("increase t_max"), ConfigError);
    CHECK_THROWS_AS(calibrate_effective_coupling(swap_dev(), {0.0, 2.3}, 1e-6), ConfigError);
  }
}

TEST_SUITE("trajectory") {
  TEST_CASE("superadiabatic transfer follows the meridian at 80 ns") {
    const auto r = trajectory(Scheme::kSuperadiabatic, 80e-9, swap_dev());
    CHECK(r.bloch.front()[2] == doctest::Approx(1.0));
    CHECK(r.bloch.back()[2] == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(r.upper_population.back() >= 0.999);
    for (const auto& b : r.bloch) {
      CHECK(std::abs(b[1]) <= 0.02);
      CHECK(std::abs(norm3(b) - 1.0) <= 1e-6);
    }
  }

  TEST_CASE("adiabatic transfer needs about ten quantum limits") {
    CHECK(trajectory(Scheme::kAdiabatic, 80e-9, swap_dev()).upper_population.back() < 0.9);
    CHECK(trajectory(Scheme::kAdiabatic, 690e-9, swap_dev()).upper_population.back() >= 0.98);
  }

  TEST_CASE("tomography emulation reproduces the direct expectations") {
    TrajectoryOptions o;
    o.emulate_tomography = true;
    const auto a = trajectory(Scheme::kAdiabatic, 80e-9, swap_dev());
    const auto b = trajectory(Scheme::kAdiabatic, 80e-9, swap_dev(), o);
    REQUIRE(a.bloch.size() == b.bloch.size());
    for (std::size_t i = 0; i < a.bloch.size(); ++i)
      for (int k = 0; k < 3; ++k) CHECK(std::abs(a.bloch[i][k] - b.bloch[i][k]) < 1e-12);
  }

  TEST_CASE("property: decoherent trajectories lose purity monotonically") {
    TrajectoryOptions o;
    o.decoherence = true;
    const auto r = trajectory(Scheme::kSuperadiabatic, 80e-9, swap_dev(), o);
    for (std::size_t i = 1; i < r.bloch.size(); ++i) CHECK(norm3(r.bloch[i]) <= norm3(r.bloch[i - 1]) + 1e-12);
    CHECK(norm3(r.bloch.back()) < 1.0);
  }

  TEST_CASE("rejects the dynamical scheme and short durations") {
    CHECK_THROWS_AS(trajectory(Scheme::kDynamical, 80e-9, swap_dev()), ConfigError);
    CHECK_THROWS_AS(trajectory(Scheme::kSuperadiabatic, 0.5e-9, swap_dev()), ConfigError);
    CHECK_THROWS_AS(parse_scheme("sideways"), ConfigError);
    CHECK(parse_scheme(to_string(Scheme::kAdiabatic)) == Scheme::kAdiabatic);
  }
}

TEST_SUITE("frame") {
  TEST_CASE("beta sign regression: the frozen convention transfers |01> -> |10>") {
    const auto c = select_frame_convention(swap_dev(), 80e-9);
    CHECK(c.beta_sign == pulses::kBetaSign);
    CHECK(std::max(c.transfer_plus, c.transfer_minus) > 0.99);
  }

  TEST_CASE("lab frame matches the effective model") {
    const auto r = frame_equivalence(swap_dev(), 80e-9);
    CHECK(r.max_deviation <= 5e-3);
    CHECK(r.lab_upper.back() >= 0.99);
  }
}

TEST_SUITE("robustness") {
  TEST_CASE("dynamical scheme: resonant pi pulse at the design point and the Rabi-area corner") {
    const RobustnessOptions o;
    CHECK(robustness_point(Scheme::kDynamical, 1.0, 1.0, swap_dev()) >= 0.999);
    CHECK(robustness_point(Scheme::kDynamical, 1.0, 1.0, swap_dev()) == doctest::Approx(1.0).epsilon(1e-9));
    // sin^2(1.1 * 1.1 * pi / 2) = sin^2(0.605 pi)
    const double corner = robustness_point(Scheme::kDynamical, 1.1, 1.1, swap_dev());
    CHECK(std::abs(corner - std::pow(std::sin(0.605 * oracle::kPi), 2)) <= 0.02);
    CHECK(corner == doctest::Approx(std::pow(std::sin(0.605 * oracle::kPi), 2)).epsilon(1e-6));
  }

  TEST_CASE("dynamical scheme at the nominal 0.36 g") {
    RobustnessOptions o;
    o.pi_area_dynamical = false;
    const double w = o.omega_xc_over_g * swap_dev().g;
    for (double a : {0.9, 1.0, 1.07})
      CHECK(robustness_point(Scheme::kDynamical, a, 1.0, swap_dev(), o) ==
            doctest::Approx(oracle::rabi_transfer(a * w, o.t_c)).epsilon(1e-6));
  }

  TEST_CASE("property: superadiabatic worst case beats dynamical on the 10% grid") {
    const auto axis = linspace(0.9, 1.1, 5);
    const auto sa = robustness_scan(Scheme::kSuperadiabatic, axis, axis, swap_dev());
    const auto dyn = robustness_scan(Scheme::kDynamical, axis, axis, swap_dev());
    double sa_min = 1.0, dyn_min = 1.0;
    for (std::size_t i = 0; i < axis.size(); ++i)
      for (std::size_t j = 0; j < axis.size(); ++j) {
        for (double f : {sa.fidelity[i][j], dyn.fidelity[i][j]}) {
          CHECK(f >= 0.0);
          CHECK(f <= 1.0 + 1e-9);
        }
        sa_min = std::min(sa_min, sa.fidelity[i][j]);
        dyn_min = std::min(dyn_min, dyn.fidelity[i][j]);
      }
    CHECK(sa_min > dyn_min);
    for (std::size_t i = 0; i < axis.size(); ++i) CHECK(sa.fidelity[i][i] >= dyn.fidelity[i][i] - 1e-9);
  }

  TEST_CASE("cells beyond the Bessel ceiling are marked invalid") {
    const auto g = robustness_scan(Scheme::kSuperadiabatic, {1.0, 3.0}, {1.0}, swap_dev());
    CHECK_FALSE(std::isnan(g.fidelity[0][0]));
    CHECK(std::isnan(g.fidelity[1][0]));
    CHECK_THROWS_AS(robustness_scan(Scheme::kDynamical, {1.0, 0.9}, {1.0}, swap_dev()), ConfigError);
  }

  TEST_CASE("decoherence lowers the transfer") {
    RobustnessOptions o;
    o.decoherence = true;
    const double ideal = robustness_point(Scheme::kSuperadiabatic, 1.0, 1.0, swap_dev());
    const double noisy = robustness_point(Scheme::kSuperadiabatic, 1.0, 1.0, swap_dev(), o);
    CHECK(noisy < ideal);
    CHECK(noisy > 0.8);
  }
}
