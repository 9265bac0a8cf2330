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
#include "sagate/error.hpp"
#include "sagate/operators.hpp"

using namespace sagate;
using namespace sagate::operators;

namespace {

Operator random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("kron examples") {
    CHECK(oracle::max_abs(kron(identity(2), identity(2)) - Operator::Identity(4, 4)) == 0.0);
    Operator expect = Operator::Zero(4, 4);
    expect.diagonal() << 1, 1, -1, -1;
    CHECK(oracle::max_abs(kron(pauli_z(), identity(2)) - expect) == 0.0);
    const Operator a3 = lowering(3);
    const Operator k = kron(a3, a3.adjoint());
    CHECK(k(0 * 3 + 1, 1 * 3 + 0) == Complex(1.0, 0.0));
  }

  TEST_CASE("kron dimension law on random sizes") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
      const int da = d(rng), db = d(rng);
      const Operator r = kron(random_hermitian(da, rng), random_hermitian(db, rng));
      CHECK(r.rows() == da * db);
      CHECK(r.cols() == da * db);
    }
  }

  TEST_CASE("Pauli matrices match the textbook forms") {
    CHECK(oracle::max_abs(pauli_x() - oracle::sx()) == 0.0);
    CHECK(oracle::max_abs(pauli_y() - oracle::sy()) == 0.0);
    CHECK(oracle::max_abs(pauli_z() - oracle::sz()) == 0.0);
  }

  TEST_CASE("embed examples and errors") {
    CHECK(oracle::max_abs(embed(pauli_z(), 0, {2, 2}) - kron(pauli_z(), identity(2))) == 0.0);
    const QuantumState s02 = basis_state(9, product_index({0, 2}, {3, 3}));
    const QuantumState n_s02 = embed(number(3), 1, {3, 3}) * s02;
    CHECK(std::abs(n_s02.dot(s02) - Complex(2.0, 0.0)) < 1e-15);
    const QuantumState s20 = basis_state(9, product_index({2, 0}, {3, 3}));
    const QuantumState s10 = basis_state(9, product_index({1, 0}, {3, 3}));
    const QuantumState out = embed(lowering(3), 0, {3, 3}) * s20;
    CHECK((out - std::sqrt(2.0) * s10).norm() < 1e-15);
    CHECK_THROWS_AS(embed(pauli_z(), 0, {3, 3}), ConfigError);
    CHECK_THROWS_AS(embed(pauli_z(), 2, {2, 2}), ConfigError);
  }

  TEST_CASE("expm_propagator examples") {
    CHECK(oracle::max_abs(expm_propagator(Operator::Zero(3, 3), 1e-9) - identity(3)) < 1e-15);
    const double omega = 2.0 * oracle::kPi * 5e6;
    const double t = oracle::kPi / omega;
    const Operator flip = expm_propagator(0.5 * omega * pauli_x(), t);
    CHECK(oracle::max_abs(flip - Complex(0, -1) * oracle::sx()) < 1e-12);
    const double delta = 2.0 * oracle::kPi * 3e6, tt = 70e-9;
    Operator diag = Operator::Zero(2, 2);
    diag(0, 0) = std::exp(Complex(0, -delta * tt / 2));
    diag(1, 1) = std::exp(Complex(0, delta * tt / 2));
    CHECK(oracle::max_abs(expm_propagator(0.5 * delta * pauli_z(), tt) - diag) < 1e-12);
    Operator bad = Operator::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(expm_propagator(bad, 1.0), ConfigError);
  }

  TEST_CASE("expm_propagator agrees with a Taylor-series exponential") {
    std::mt19937_64 rng(5);
    for (int dim : {2, 3, 4, 9}) {
      const Operator h = random_hermitian(dim, rng);
      CHECK(oracle::max_abs(expm_propagator(h, 0.7) - oracle::expm_taylor(h, 0.7)) < 1e-11);
    }
  }

  TEST_CASE("property: unitarity and composition") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(1, 16);
    std::uniform_real_distribution<double> tdist(0.0, 3.0);
    for (int trial = 0; trial < 40; ++trial) {
      const int dim = d(rng);
      const Operator h = random_hermitian(dim, rng);
      const double t1 = tdist(rng), t2 = tdist(rng);
      const Operator u = expm_propagator(h, t1);
      CHECK(oracle::max_abs(u.adjoint() * u - identity(dim)) <= 1e-10);
      CHECK(oracle::max_abs(expm_propagator(h, t1 + t2) - u * expm_propagator(h, t2)) <= 1e-9);
    }
  }

  TEST_CASE("property: two-level eigenvalues are +-sqrt(Omega^2 + Delta^2)/2") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> p(-50.0, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double delta = p(rng), omega = p(rng), phi = p(rng);
      const Operator h = 0.5 * (delta * pauli_z() + omega * (std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y()));
      Eigen::SelfAdjointEigenSolver<Operator> es(h);
      const double half = 0.5 * std::hypot(omega, delta);
      CHECK(std::abs(es.eigenvalues()(0) + half) < 1e-10 * std::max(1.0, half));
      CHECK(std::abs(es.eigenvalues()(1) - half) < 1e-10 * std::max(1.0, half));
    }
  }

  TEST_CASE("expectation examples") {
    const QuantumState zero = basis_state(2, 0);
    QuantumState plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(expectation(zero, pauli_z()) == doctest::Approx(1.0));
    CHECK(expectation(plus, pauli_x()) == doctest::Approx(1.0));
    CHECK(std::abs(expectation(zero, pauli_x())) < 1e-15);
    CHECK_THROWS_AS(expectation(basis_state(3, 0), pauli_z()), ConfigError);
  }

  TEST_CASE("density validity") {
    QuantumState plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(is_valid_density(pure_density(plus)));
    DensityMatrix bad = DensityMatrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_FALSE(is_valid_density(bad));
  }
}
