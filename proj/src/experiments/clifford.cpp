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
#include <map>
#include <numbers>

#include "sagate/error.hpp"
#include "sagate/experiments.hpp"

namespace sagate::experiments {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSingleClass = 576;
constexpr int kCnotClass = 5184;
constexpr int kIswapClass = 5184;

using Key = std::vector<long long>;

// Entries divided by the phase of the first sizeable entry, rounded.
Key phase_key(const Operator& u) {
  const double top = u.cwiseAbs().maxCoeff();
  operators::Complex ref = 1.0;
  bool found = false;
  for (Eigen::Index j = 0; j < u.cols() && !found; ++j)
    for (Eigen::Index i = 0; i < u.rows() && !found; ++i)
      if (std::abs(u(i, j)) > 0.5 * top) {
        ref = std::abs(u(i, j)) / u(i, j);
        found = true;
      }
  Key key;
  key.reserve(2 * u.size());
  for (Eigen::Index j = 0; j < u.cols(); ++j)
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const operators::Complex z = u(i, j) * ref;
      key.push_back(std::llround(z.real() * 1e6));
      key.push_back(std::llround(z.imag() * 1e6));
    }
  return key;
}

Operator rotation(const Operator& axis, double angle) { return operators::expm_propagator(axis, 0.5 * angle); }

struct Tables {
  std::vector<Operator> c1;
  std::map<Key, int> c1_index;
  std::vector<std::vector<int>> c1_product;  // c1_product[a][b] = index of C1[a] C1[b]
  std::vector<int> s1;                        // C1 indices of the three-element S1 subgroup
  std::vector<CliffordElement> elements;
  std::map<Key, int> index;

  int c1_lookup(const Operator& u) const {
    const auto it = c1_index.find(phase_key(u));
    if (it == c1_index.end()) throw NumericalError("single-qubit Clifford lookup failed");
    return it->second;
  }

  // Product of primitives applied left to right, adjacent single layers merged.
  CliffordElement compile(int idx, const std::vector<Primitive>& raw) const {
    CliffordElement e;
    e.index = idx;
    for (const auto& p : raw) {
      if (p.kind == Primitive::Kind::kSingle && !e.decomposition.empty() &&
          e.decomposition.back().kind == Primitive::Kind::kSingle) {
        auto& last = e.decomposition.back();
        last.q1 = c1_product[p.q1][last.q1];
        last.q2 = c1_product[p.q2][last.q2];
      } else {
        e.decomposition.push_back(p);
      }
      if (e.decomposition.back().kind == Primitive::Kind::kSingle && e.decomposition.back().q1 == 0 &&
          e.decomposition.back().q2 == 0)
        e.decomposition.pop_back();
    }
    e.unitary = Operator::Identity(4, 4);
    for (const auto& p : e.decomposition)
      e.unitary = (p.kind == Primitive::Kind::kCz ? cz_target() : operators::kron(c1[p.q1], c1[p.q2])) * e.unitary;
    return e;
  }
};

std::vector<Operator> build_c1() {
  const Operator h = (operators::pauli_x() + operators::pauli_z()) / std::numbers::sqrt2;
  Operator s = Operator::Identity(2, 2);
  s(1, 1) = operators::kI;
  std::vector<Operator> out{Operator::Identity(2, 2)};
  std::map<Key, int> seen{{phase_key(out[0]), 0}};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Operator* gen : std::array<const Operator*, 2>{&h, &s}) {
      const Operator next = (*gen) * out[i];
      if (seen.emplace(phase_key(next), static_cast<int>(out.size())).second) out.push_back(next);
    }
  if (out.size() != 24) throw NumericalError("single-qubit Clifford group has wrong order");
  return out;
}

const Tables& tables() {
  static const Tables t = [] {
    Tables t;
    t.c1 = build_c1();
    for (int i = 0; i < 24; ++i) t.c1_index.emplace(phase_key(t.c1[i]), i);
    t.c1_product.assign(24, std::vector<int>(24));
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 24; ++b) t.c1_product[a][b] = t.c1_lookup(t.c1[a] * t.c1[b]);

    const Operator diag = (operators::pauli_x() + operators::pauli_y() + operators::pauli_z()) / std::sqrt(3.0);
    t.s1 = {0, t.c1_lookup(rotation(diag, 2.0 * kPi / 3.0)), t.c1_lookup(rotation(diag, 4.0 * kPi / 3.0))};
    const int y_half = t.c1_lookup(rotation(operators::pauli_y(), kPi / 2));
    const int x_minus_half = t.c1_lookup(rotation(operators::pauli_x(), -kPi / 2));
    const int hadamard = t.c1_lookup((operators::pauli_x() + operators::pauli_z()) / std::numbers::sqrt2);

    const Primitive cz{Primitive::Kind::kCz, 0, 0};
    auto single = [](int a, int b) { return Primitive{Primitive::Kind::kSingle, a, b}; };

    t.elements.reserve(kCliffordCount);
    for (int idx = 0; idx < kCliffordCount; ++idx) {
      std::vector<Primitive> raw;
      if (idx < kSingleClass) {
        raw = {single(idx / 24, idx % 24)};
      } else if (idx < kSingleClass + kCnotClass) {
        const int r = idx - kSingleClass;
        const int c = r / 9, s = r % 9;
        raw = {single(t.s1[s / 3], t.s1[s % 3]), cz, single(c / 24, c % 24)};
      } else if (idx < kSingleClass + kCnotClass + kIswapClass) {
        const int r = idx - kSingleClass - kCnotClass;
        const int c = r / 9, s = r % 9;
        raw = {single(t.s1[s / 3], t.s1[s % 3]), cz, single(y_half, x_minus_half), cz, single(c / 24, c % 24)};
      } else {
        // SWAP = CNOT CNOT' CNOT with CNOT = (1 x H) CZ (1 x H).
        const int c = idx - kSingleClass - kCnotClass - kIswapClass;
        raw = {single(0, hadamard), cz, single(hadamard, hadamard), cz, single(hadamard, hadamard), cz,
               single(0, hadamard), single(c / 24, c % 24)};
      }
      t.elements.push_back(t.compile(idx, raw));
    }
    for (const auto& e : t.elements)
      if (!t.index.emplace(phase_key(e.unitary), e.index).second)
        throw NumericalError("two-qubit Clifford enumeration produced a duplicate");
    return t;
  }();
  return t;
}

}  // namespace

const std::vector<Operator>& single_qubit_cliffords() { return tables().c1; }

Operator primitive_unitary(const Primitive& p) {
  if (p.kind == Primitive::Kind::kCz) return cz_target();
  const auto& c1 = single_qubit_cliffords();
  if (p.q1 < 0 || p.q1 >= 24 || p.q2 < 0 || p.q2 >= 24) throw ConfigError("single-qubit Clifford index out of range");
  return operators::kron(c1[p.q1], c1[p.q2]);
}

CliffordElement generate_clifford(int index) {
  if (index < 0 || index >= kCliffordCount) throw ConfigError("Clifford index out of range [0, 11520)");
  return tables().elements[index];
}

CliffordElement sample_clifford(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, kCliffordCount - 1);
  return generate_clifford(pick(rng));
}

int clifford_index(const Operator& u) {
  if (u.rows() != 4 || u.cols() != 4) return -1;
  const auto& t = tables();
  const auto it = t.index.find(phase_key(u));
  return it == t.index.end() ? -1 : it->second;
}

}  // namespace sagate::experiments
