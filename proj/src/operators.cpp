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

#include "sagate/operators.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "sagate/error.hpp"

namespace sagate::operators {

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator pauli_y() {
  Operator m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Operator lowering(int levels) {
  Operator a = Operator::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Operator number(int levels) {
  Operator n = Operator::Zero(levels, levels);
  for (int k = 0; k < levels; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Operator kron(const Operator& a, const Operator& b) {
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  Operator out(na * nb, a.cols() * b.cols());
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * nb, j * b.cols(), nb, b.cols()) = a(i, j) * b;
  return out;
}

Operator embed(const Operator& op, int site, const std::vector<int>& dims) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw ConfigError("embed: site " + std::to_string(site) + " out of range");
  if (op.rows() != dims[site] || op.cols() != dims[site])
    throw ConfigError("embed: operator dimension " + std::to_string(op.rows()) +
                      " does not match subsystem dimension " + std::to_string(dims[site]));
  Operator out = Operator::Identity(1, 1);
  for (int s = 0; s < static_cast<int>(dims.size()); ++s)
    out = kron(out, s == site ? op : identity(dims[s]));
  return out;
}

double hermiticity_error(const Operator& op) {
  return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  if (op.size() == 0) return true;
  const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  return hermiticity_error(op) <= tol * scale;
}

Operator expm_propagator(const Operator& h, double dt) {
  if (!is_hermitian(h)) throw ConfigError("expm_propagator: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  const Operator& v = es.eigenvectors();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * (w(k) * dt));
  return v * phases.asDiagonal() * v.adjoint();
}

double expectation(const QuantumState& state, const Operator& op) {
  if (op.rows() != state.size() || op.cols() != state.size())
    throw ConfigError("expectation: dimension mismatch");
  const Complex value = state.dot(op * state);
  const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  if (std::abs(value.imag()) > 1e-10 * scale)
    throw NumericalError("expectation: operator is not Hermitian on this state");
  return value.real();
}

QuantumState basis_state(int dim, int index) {
  if (index < 0 || index >= dim) throw ConfigError("basis_state: index out of range");
  QuantumState psi = QuantumState::Zero(dim);
  psi(index) = 1.0;
  return psi;
}

int product_index(const std::vector<int>& occupations, const std::vector<int>& dims) {
  if (occupations.size() != dims.size()) throw ConfigError("product_index: rank mismatch");
  int index = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (occupations[s] < 0 || occupations[s] >= dims[s])
      throw ConfigError("product_index: occupation exceeds subsystem dimension");
    index = index * dims[s] + occupations[s];
  }
  return index;
}

DensityMatrix pure_density(const QuantumState& state) { return state * state.adjoint(); }

bool is_valid_density(const DensityMatrix& rho, double herm_tol, double trace_tol, double eig_tol) {
  if (rho.rows() != rho.cols()) return false;
  if (hermiticity_error(rho) > herm_tol) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > trace_tol) return false;
  const Operator sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_tol;
}

}  // namespace sagate::operators
