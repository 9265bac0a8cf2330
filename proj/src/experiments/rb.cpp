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

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "sagate/error.hpp"
#include "sagate/experiments.hpp"

namespace sagate::experiments {

namespace {

using operators::DensityMatrix;

// Two-qubit operator lifted to levels per transmon, identity above |1>.
Operator lift(const Operator& u4, int levels) {
  if (levels == 2) return u4;
  const int dim = levels * levels;
  const auto idx = dynamics::computational_indices(levels);
  Operator out = Operator::Identity(dim, dim);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(idx[i], idx[j]) = u4(i, j);
  return out;
}

Operator lift_single_layer(int q1, int q2, int levels) {
  const auto& c1 = single_qubit_cliffords();
  Operator a = Operator::Identity(levels, levels);
  Operator b = Operator::Identity(levels, levels);
  a.topLeftCorner(2, 2) = c1[q1];
  b.topLeftCorner(2, 2) = c1[q2];
  return operators::kron(a, b);
}

void apply_channel(DensityMatrix& rho, const Operator& s) { rho = dynamics::apply_superoperator(s, rho); }

void apply_unitary(DensityMatrix& rho, const Operator& u) { rho = u * rho * u.adjoint(); }

void depolarize(DensityMatrix& rho, double p, int levels) {
  const double trace = rho.trace().real();
  rho *= p;
  for (int i : dynamics::computational_indices(levels)) rho(i, i) += (1.0 - p) * 0.25 * trace;
}

void apply_clifford(DensityMatrix& rho, const CliffordElement& c, const GateModel& model) {
  for (const auto& p : c.decomposition) {
    if (p.kind == Primitive::Kind::kSingle) {
      apply_unitary(rho, lift_single_layer(p.q1, p.q2, model.levels));
      if (model.layer_channel) apply_channel(rho, *model.layer_channel);
    } else if (model.cz_channel) {
      apply_channel(rho, *model.cz_channel);
    } else {
      apply_unitary(rho, lift(cz_target(), model.levels));
    }
  }
  if (model.kind == GateModel::Kind::kDepolarizing) depolarize(rho, model.depolarizing, model.levels);
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

RbVariant parse_rb_variant(const std::string& name) {
  if (name == "reference") return RbVariant::kReference;
  if (name == "interleaved-cz") return RbVariant::kInterleavedCz;
  if (name == "interleaved-idle") return RbVariant::kInterleavedIdle;
  throw ConfigError("unknown RB variant '" + name + "' (expected reference, interleaved-cz or interleaved-idle)");
}

std::string to_string(RbVariant variant) {
  switch (variant) {
    case RbVariant::kReference:
      return "reference";
    case RbVariant::kInterleavedCz:
      return "interleaved-cz";
    case RbVariant::kInterleavedIdle:
      return "interleaved-idle";
  }
  return "unknown";
}

GateModel ideal_gate_model() { return GateModel{}; }

GateModel depolarizing_gate_model(double p0) {
  if (!(p0 > 0.0) || p0 > 1.0) throw ConfigError("depolarizing parameter must lie in (0, 1]");
  GateModel m;
  m.kind = GateModel::Kind::kDepolarizing;
  m.depolarizing = p0;
  return m;
}

Operator idle_channel(const device::DeviceParams& dev, double duration, double dt) {
  dev.validate();
  dynamics::TimeDependentHamiltonian h(dev.dim());
  const double steps = std::max(1.0, std::round(duration / dt));
  return dynamics::lindblad_superoperator(h, device::collapse_operators(dev), duration, duration / steps);
}

GateModel lindblad_gate_model(const device::DeviceParams& dev, const LindbladModelOptions& options) {
  CzOptions cz;
  cz.dt = options.dt;
  cz.decoherence = true;
  cz.stride = 1000000;
  const CzResult gate = cz_gate(dev, options.t_half, cz);
  GateModel m;
  m.kind = GateModel::Kind::kLindblad;
  m.levels = dev.levels;
  m.cz_channel = *gate.superoperator;
  m.interleaved_cz = *gate.superoperator;
  if (options.layer_idle > 0.0) m.layer_channel = idle_channel(dev, options.layer_idle);
  m.interleaved_idle = idle_channel(dev, options.idle_duration.value_or(2.0 * options.t_half));
  return m;
}

double rb_sequence_survival(int m, std::uint64_t seed, int m_index, int draw, const GateModel& model,
                            RbVariant variant) {
  if (m < 0) throw ConfigError("sequence length must be non-negative");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(m_index), static_cast<std::uint32_t>(draw)};
  std::mt19937_64 rng(seq);
  const int dim = model.levels * model.levels;
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  Operator ideal = Operator::Identity(4, 4);
  for (int i = 0; i < m; ++i) {
    const CliffordElement c = sample_clifford(rng);
    apply_clifford(rho, c, model);
    ideal = c.unitary * ideal;
    if (variant == RbVariant::kInterleavedCz) {
      if (model.interleaved_cz) apply_channel(rho, *model.interleaved_cz);
      else apply_unitary(rho, lift(cz_target(), model.levels));
      ideal = cz_target() * ideal;
    } else if (variant == RbVariant::kInterleavedIdle && model.interleaved_idle) {
      apply_channel(rho, *model.interleaved_idle);
    }
  }
  const int recovery = clifford_index(ideal.adjoint());
  if (recovery < 0) throw NumericalError("recovery Clifford lookup failed");
  apply_clifford(rho, generate_clifford(recovery), model);
  return rho(0, 0).real();
}

ExponentialFit fit_exponential(const std::vector<double>& m, const std::vector<double>& means) {
  const std::size_t n = m.size();
  if (n != means.size()) throw ConfigError("fit_exponential: length mismatch");
  std::vector<double> distinct = m;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw ConfigError("fit_exponential: need at least three distinct lengths");

  ExponentialFit fit;
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  if (*hi - *lo < 1e-9) {
    fit.degenerate = true;
    fit.b = means.back();
    fit.p = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }

  // Initial guess: A = y0 - y_last, B = y_last, p from log-linear regression.
  double a = means.front() - means.back();
  double b = means.back();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (means[i] - b) / a;
    if (r <= 0.0) continue;
    const double y = std::log(r);
    sx += m[i];
    sy += y;
    sxx += m[i] * m[i];
    sxy += m[i] * y;
    ++cnt;
  }
  double p = 0.9;
  if (cnt >= 2 && cnt * sxx - sx * sx > 0.0) p = std::exp((cnt * sxy - sx * sy) / (cnt * sxx - sx * sx));
  p = std::clamp(p, 1e-6, 1.0 - 1e-6);

  auto cost = [&](double aa, double pp, double bb) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = aa * std::pow(pp, m[i]) + bb - means[i];
      c += r * r;
    }
    return c;
  };

  double lambda = 1e-3;
  double current = cost(a, p, b);
  for (int it = 1; it <= 200; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double pm = std::pow(p, m[i]);
      const Eigen::Vector3d j(pm, m[i] == 0.0 ? 0.0 : a * m[i] * std::pow(p, m[i] - 1.0), 1.0);
      const double r = a * pm + b - means[i];
      jtj += j * j.transpose();
      jtr += j * r;
    }
    bool accepted = false;
    double step_norm = 0.0;
    for (int tries = 0; tries < 60 && !accepted; ++tries) {
      Eigen::Matrix3d damped = jtj;
      for (int k = 0; k < 3; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      const Eigen::Vector3d delta = -damped.partialPivLu().solve(jtr);
      const double na = a + delta(0), np = p + delta(1), nb = b + delta(2);
      if (np > 0.0 && np < 1.0) {
        const double c = cost(na, np, nb);
        if (c <= current) {
          step_norm = delta.norm() / (std::abs(a) + std::abs(p) + std::abs(b) + 1e-12);
          a = na;
          p = np;
          b = nb;
          current = c;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          break;
        }
      }
      lambda *= 4.0;
    }
    fit.iterations = it;
    if (!accepted || step_norm < 1e-12 || current < 1e-30) {
      fit.converged = true;
      break;
    }
  }
  if (!fit.converged) throw NumericalError("exponential fit did not converge in 200 iterations");
  fit.a = a;
  fit.p = p;
  fit.b = b;
  return fit;
}

RbResult run_rb(RbVariant variant, const std::vector<int>& lengths, int k, std::uint64_t seed,
                const GateModel& model) {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (lengths.empty()) throw ConfigError("m_list must not be empty");
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (lengths[i] < 0 || (i > 0 && lengths[i] <= lengths[i - 1]))
      throw ConfigError("m_list must be non-negative and strictly ascending");
  RbResult out;
  out.variant = variant;
  out.lengths = lengths;
  for (std::size_t mi = 0; mi < lengths.size(); ++mi) {
    std::vector<double> samples(k);
    for (int draw = 0; draw < k; ++draw)
      samples[draw] = rb_sequence_survival(lengths[mi], seed, static_cast<int>(mi), draw, model, variant);
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= k;
    out.mean.push_back(mean);
    out.stderr_mean.push_back(sample_std(samples, mean) / std::sqrt(static_cast<double>(k)));
  }
  std::vector<double> m(lengths.begin(), lengths.end());
  try {
    out.fit = fit_exponential(m, out.mean);
  } catch (const NumericalError&) {
    out.fit = ExponentialFit{};
  }
  return out;
}

std::optional<double> interleaved_error_rate(const RbResult& reference, const RbResult& interleaved) {
  if (!reference.fit.converged || !interleaved.fit.converged) return std::nullopt;
  constexpr double d = 4.0;
  return (1.0 - interleaved.fit.p / reference.fit.p) * (d - 1.0) / d;
}

}  // namespace sagate::experiments
