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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sagate::operators {

// All Hamiltonians are angular frequencies (rad/s) with hbar = 1, so a
// propagator over dt is exp(-i H dt).

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using QuantumState = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

Operator identity(int dim);
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

/// Truncated lowering operator a on `levels` levels: a|k> = sqrt(k)|k-1>.
Operator lowering(int levels);
/// Number operator diag(0, 1, ..., levels-1).
Operator number(int levels);

/// Kronecker product with result[(i*nb+k),(j*nb+l)] = a[i,j] * b[k,l].
Operator kron(const Operator& a, const Operator& b);

/// Tensor `op` into position `site` of a product space with subsystem
/// dimensions `dims`, identity elsewhere. Site 0 is the leftmost factor (Q1).
Operator embed(const Operator& op, int site, const std::vector<int>& dims);

/// Largest absolute entry of (op - op^dagger).
double hermiticity_error(const Operator& op);
bool is_hermitian(const Operator& op, double tol = 1e-12);

/// exp(-i h dt) for Hermitian h via eigendecomposition. Throws ConfigError
/// when h is not Hermitian.
Operator expm_propagator(const Operator& h, double dt);

/// <psi|op|psi> for Hermitian op; rejects dimension mismatch and a
/// non-negligible imaginary part.
double expectation(const QuantumState& state, const Operator& op);

/// Computational basis vector |index> in dimension dim.
QuantumState basis_state(int dim, int index);

/// Index of the product basis state |k0 k1 ...> for subsystem dims.
int product_index(const std::vector<int>& occupations, const std::vector<int>& dims);

DensityMatrix pure_density(const QuantumState& state);

/// Hermiticity, unit trace and positivity check with the tolerances used
/// throughout the propagators.
bool is_valid_density(const DensityMatrix& rho, double herm_tol = 1e-9, double trace_tol = 1e-7,
                      double eig_tol = 1e-7);

}  // namespace sagate::operators
