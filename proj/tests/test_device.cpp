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

#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "sagate/device.hpp"
#include "sagate/dynamics.hpp"
#include "sagate/error.hpp"

using namespace sagate;
using device::DeviceParams;
using device::FluxCoefficients;

namespace {

DeviceParams single_transmon_pair(double t1, double tphi, int levels = 2) {
  DeviceParams dev;
  dev.omega1 = 5.0 * oracle::kGHz;
  dev.omega2 = 5.2 * oracle::kGHz;
  dev.g = 1.0 * oracle::kMHz;
  dev.flux = device::default_flux_coefficients();
  dev.t1_q1 = t1;
  dev.tphi_q1 = tphi;
  dev.levels = levels;
  return dev;
}

// Lindblad run with H = 0 on the two-transmon space.
operators::DensityMatrix idle_evolve(const DeviceParams& dev, const operators::DensityMatrix& rho0, double t,
                                     double dt) {
  dynamics::TimeDependentHamiltonian h(dev.dim());
  return *dynamics::propagate_lindblad(h, device::collapse_operators(dev), rho0, t, dt).final_density;
}

}  // namespace

TEST_SUITE("device") {
  TEST_CASE("flux_response examples") {
    const FluxCoefficients c{2.0 * oracle::kMHz, -1.0 * oracle::kMHz, 0.4 * oracle::kMHz};
    CHECK(device::flux_response(0.0, c) == 0.0);
    CHECK(device::flux_response(0.37, FluxCoefficients{1.0, 0.0, 0.0}) == doctest::Approx(0.37));
    CHECK(device::flux_response(0.5, c) == doctest::Approx(0.8 * oracle::kMHz).epsilon(1e-12));
  }

  TEST_CASE("invert_flux_response examples") {
    const FluxCoefficients c{2.0 * oracle::kMHz, -1.0 * oracle::kMHz, 0.4 * oracle::kMHz};
    CHECK(device::invert_flux_response(0.0, c) == 0.0);
    CHECK(device::invert_flux_response(0.25, FluxCoefficients{1.0, 0.0, 0.0}) == doctest::Approx(0.25));
    CHECK(device::invert_flux_response(0.8 * oracle::kMHz, c) == doctest::Approx(0.5).epsilon(1e-10));
  }

  TEST_CASE("invert_flux_response rejects shifts beyond the monotonic range") {
    // f = eps - eps^2 peaks at 1/4; a larger shift has no monotone preimage.
    const FluxCoefficients c{1.0, -1.0, 0.0};
    CHECK_THROWS_WITH_AS(device::invert_flux_response(0.3, c), "response not invertible at requested shift",
                         NumericalError);
  }

  TEST_CASE("property: flux response round trip") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double c1 = oracle::kGHz * (0.5 + std::abs(u(rng)));
      const FluxCoefficients c{c1, 0.1 * c1 * u(rng), 0.05 * c1 * u(rng)};
      // stay well inside the range where f' > 0
      const double eps = 0.8 * u(rng);
      const double back = device::invert_flux_response(device::flux_response(eps, c), c);
      CHECK(std::abs(back - eps) <= 1e-8);
    }
  }

  TEST_CASE("presets carry the quoted device numbers") {
    const auto swap = device::preset("swap-point");
    CHECK(swap.omega1 / oracle::kGHz == doctest::Approx(6.1567));
    CHECK(swap.omega2 / oracle::kGHz == doctest::Approx(5.9498));
    CHECK(swap.g / oracle::kMHz == doctest::Approx(6.26));
    CHECK(swap.t1_q1 == doctest::Approx(4.06e-6));
    CHECK(swap.tphi_q1 == doctest::Approx(620e-9));
    CHECK(swap.t1_q2 == doctest::Approx(3.98e-6));
    CHECK(swap.tphi_q2 == doctest::Approx(6.1e-6));
    const auto cz = device::preset("cz-point");
    CHECK(cz.omega1 / oracle::kGHz == doctest::Approx(6.4873));
    CHECK(cz.eta1 / oracle::kMHz == doctest::Approx(-299.2));
    CHECK(std::sqrt(2.0) * cz.g / oracle::kMHz == doctest::Approx(9.14));
    CHECK(cz.levels == 3);
    CHECK_THROWS_AS(device::preset("nowhere"), ConfigError);
  }

  TEST_CASE("device JSON round trip and validation") {
    const auto dev = device::preset("cz-point");
    const auto back = device::device_from_json(device::device_to_json(dev));
    CHECK(back.omega1 == doctest::Approx(dev.omega1));
    CHECK(back.g == doctest::Approx(dev.g));
    CHECK(back.tphi_q2 == doctest::Approx(dev.tphi_q2));
    CHECK(back.levels == dev.levels);
    auto j = device::device_to_json(dev);
    j["colour"] = "blue";
    CHECK_THROWS_AS(device::device_from_json(j), ConfigError);
    j = device::device_to_json(dev);
    j["levels"] = 4;
    CHECK_THROWS_AS(device::device_from_json(j), ConfigError);
    j = device::device_to_json(dev);
    j["omega2_ghz"] = j["omega1_ghz"];
    CHECK_THROWS_AS(device::device_from_json(j), ConfigError);
  }

  TEST_CASE("collapse operators: counts and disabled channels") {
    CHECK(device::collapse_operators(device::preset("swap-point")).ops.size() == 4);
    const auto off = device::without_decoherence(device::preset("swap-point"));
    CHECK(device::collapse_operators(off).empty());
  }

  TEST_CASE("relaxation of |1>: population exp(-t/T1)") {
    const double t1 = 4.06e-6;
    const auto dev = single_transmon_pair(t1, device::kInfiniteTime);
    operators::DensityMatrix rho = operators::DensityMatrix::Zero(4, 4);
    rho(2, 2) = 1.0;  // |10>
    const auto out = idle_evolve(dev, rho, t1, 1e-9);
    CHECK(std::abs(out(2, 2).real() - std::exp(-1.0)) <= 1e-4);
  }

  TEST_CASE("pure dephasing of |+>: coherence exp(-t/Tphi)/2") {
    const double tphi = 620e-9;
    const auto dev = single_transmon_pair(device::kInfiniteTime, tphi);
    operators::DensityMatrix rho = operators::DensityMatrix::Zero(4, 4);
    rho(0, 0) = rho(2, 2) = rho(0, 2) = rho(2, 0) = 0.5;  // Q1 in |+>
    for (double t : {0.25 * tphi, tphi}) {
      const auto out = idle_evolve(dev, rho, t, 1e-9);
      CHECK(std::abs(out(0, 2).real() - 0.5 * std::exp(-t / tphi)) <= 1e-6);
      CHECK(out(2, 2).real() == doctest::Approx(0.5).epsilon(1e-9));
    }
  }

  TEST_CASE("property: combined coherence decay rate 1/(2 T1) + 1/Tphi") {
    const double t1 = 2e-6, tphi = 1e-6;
    const auto dev = single_transmon_pair(t1, tphi);
    operators::DensityMatrix rho = operators::DensityMatrix::Zero(4, 4);
    rho(0, 0) = rho(2, 2) = rho(0, 2) = rho(2, 0) = 0.5;
    const double rate = 1.0 / (2.0 * t1) + 1.0 / tphi;
    const double t = 1.0 / rate;
    const auto out = idle_evolve(dev, rho, t, 1e-9);
    const double fitted = -std::log(2.0 * std::abs(out(0, 2))) / t;
    CHECK(std::abs(fitted / rate - 1.0) <= 0.01);
  }

  TEST_CASE("property: |2> relaxes at 2/T1") {
    const double t1 = 4e-6;
    const auto dev = single_transmon_pair(t1, device::kInfiniteTime, 3);
    operators::DensityMatrix rho = operators::DensityMatrix::Zero(9, 9);
    rho(6, 6) = 1.0;  // |20>
    const double t = 0.5 * t1;
    const auto out = idle_evolve(dev, rho, t, 1e-9);
    const double fitted = -std::log(out(6, 6).real()) / t;
    CHECK(std::abs(fitted * t1 / 2.0 - 1.0) <= 0.01);
  }

  TEST_CASE("disabled decoherence gives unitary evolution") {
    const auto dev = single_transmon_pair(device::kInfiniteTime, device::kInfiniteTime);
    operators::DensityMatrix rho = operators::DensityMatrix::Zero(4, 4);
    rho(0, 0) = rho(2, 2) = rho(0, 2) = rho(2, 0) = 0.5;
    const auto out = idle_evolve(dev, rho, 1e-6, 1e-9);
    CHECK(oracle::max_abs(out - rho) < 1e-14);
  }
}
