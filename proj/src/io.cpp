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

#include "sagate/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "sagate/error.hpp"

namespace sagate::io {

namespace {

constexpr double kMHz = 2.0 * 3.14159265358979323846 * 1e6;

nlohmann::json fit_json(const experiments::ExponentialFit& f) {
  return {{"A", number(f.a)},         {"p", number(f.p)},
          {"B", number(f.b)},         {"converged", f.converged},
          {"degenerate", f.degenerate}, {"iterations", f.iterations}};
}

nlohmann::json report_json(const dynamics::GateFidelityReport& r) {
  return {{"process_fidelity", number(r.process_fidelity)},
          {"average_gate_fidelity", number(r.average_gate_fidelity)},
          {"leakage", number(r.leakage)},
          {"z1_rad", number(r.z1)},
          {"z2_rad", number(r.z2)}};
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw ConfigError("csv row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw ConfigError("cannot create '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ConfigError("write failed for '" + path.string() + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::string artifact_stem(const std::string& experiment, const std::string& preset, const std::string& timestamp) {
  return experiment + "_" + preset + "_" + timestamp;
}

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json numbers(const std::vector<double>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

Table calibration_table(const experiments::CalibrationResult& r, double g) {
  Table t{{"amplitude", "g_eff_mhz", "g_j1_mhz", "fit_j1_mhz"}, {}};
  for (std::size_t i = 0; i < r.amplitudes.size(); ++i) {
    const double j1 = pulses::bessel_j1(r.amplitudes[i]);
    t.rows.push_back({r.amplitudes[i], r.g_eff[i] / kMHz, g * j1 / kMHz, r.fitted_g * j1 / kMHz});
  }
  return t;
}

nlohmann::json calibration_json(const experiments::CalibrationResult& r) {
  return {{"fitted_g_mhz", r.fitted_g / kMHz},
          {"peak_coupling_mhz", r.peak_coupling / kMHz},
          {"max_g_eff_mhz", r.max_g_eff / kMHz},
          {"t_ql_ns", number(r.t_ql * 1e9)}};
}

Table trajectory_table(const experiments::TrajectoryResult& r) {
  Table t{{"t_ns", "x", "y", "z", "p10"}, {}};
  for (std::size_t i = 0; i < r.times.size(); ++i)
    t.rows.push_back({r.times[i] * 1e9, r.bloch[i][0], r.bloch[i][1], r.bloch[i][2], r.upper_population[i]});
  return t;
}

nlohmann::json trajectory_json(const experiments::TrajectoryResult& r) {
  double max_y = 0.0;
  for (const auto& b : r.bloch) max_y = std::max(max_y, std::abs(b[1]));
  return {{"scheme", experiments::to_string(r.scheme)},
          {"final_p10", r.upper_population.empty() ? 0.0 : r.upper_population.back()},
          {"max_abs_y", max_y},
          {"samples", r.times.size()}};
}

Table robustness_table(const experiments::RobustnessGrid& g) {
  Table t{{"omega_ratio", "time_ratio", "p10"}, {}};
  for (std::size_t i = 0; i < g.omega_axis.size(); ++i)
    for (std::size_t j = 0; j < g.time_axis.size(); ++j)
      t.rows.push_back({g.omega_axis[i], g.time_axis[j], g.fidelity[i][j]});
  return t;
}

nlohmann::json robustness_json(const experiments::RobustnessGrid& g) {
  double lo = 1.0, hi = 0.0;
  int invalid = 0;
  for (const auto& row : g.fidelity)
    for (double f : row) {
      if (std::isnan(f)) {
        ++invalid;
        continue;
      }
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  return {{"scheme", experiments::to_string(g.scheme)},
          {"decoherence", g.decoherence},
          {"min_p10", number(invalid == static_cast<int>(g.omega_axis.size() * g.time_axis.size()) ? NAN : lo)},
          {"max_p10", number(invalid == static_cast<int>(g.omega_axis.size() * g.time_axis.size()) ? NAN : hi)},
          {"invalid_cells", invalid}};
}

Table cz_table(const experiments::CzResult& r) {
  Table t{{"t_ns", "p11", "p20", "p00", "p01", "p10"}, {}};
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const auto& p = r.populations[i];
    t.rows.push_back({r.times[i] * 1e9, p[0], p[1], p[2], p[3], p[4]});
  }
  return t;
}

nlohmann::json cz_json(const experiments::CzResult& r) {
  return {{"report", report_json(r.report)},
          {"conditional_phase_rad", r.conditional_phase},
          {"kappa", r.kappa},
          {"drive_phase_rad", r.phi},
          {"duration_ns", r.waveform.duration() * 1e9},
          {"decoherence", r.superoperator.has_value()}};
}

Table ramsey_table(const experiments::RamseyResult& r) {
  Table t{{"phase_rad", "p1_control0", "p1_control1"}, {}};
  for (std::size_t i = 0; i < r.phases.size(); ++i) t.rows.push_back({r.phases[i], r.excited[0][i], r.excited[1][i]});
  return t;
}

nlohmann::json ramsey_json(const experiments::RamseyResult& r) {
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"amplitude", f.amplitude},
                    {"phase_rad", f.phase},
                    {"offset", f.offset},
                    {"max_residual", f.max_residual}});
  return {{"conditional_phase_rad", r.conditional_phase}, {"fits", fits}};
}

Table rb_table(const experiments::RbResult& r, const experiments::RbResult* reference) {
  Table t{{"m", "mean_p00", "stderr_p00"}, {}};
  if (reference) {
    t.header.push_back("ref_mean_p00");
    t.header.push_back("ref_stderr_p00");
  }
  for (std::size_t i = 0; i < r.lengths.size(); ++i) {
    std::vector<double> row{static_cast<double>(r.lengths[i]), r.mean[i], r.stderr_mean[i]};
    if (reference) {
      row.push_back(reference->mean.at(i));
      row.push_back(reference->stderr_mean.at(i));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::json rb_json(const experiments::RbResult& r) {
  nlohmann::json j = {{"variant", experiments::to_string(r.variant)}, {"fit", fit_json(r.fit)}};
  j["error_rate"] = r.error_rate ? number(*r.error_rate) : nlohmann::json(nullptr);
  return j;
}

Table waveform_table(const pulses::Waveform& w) {
  Table t{{"t_ns", "F_rad", "Fdot_rad_per_s", "eps"}, {}};
  for (std::size_t i = 0; i < w.size(); ++i) t.rows.push_back({w.times[i] * 1e9, w.f[i], w.f_dot[i], w.eps[i]});
  return t;
}

}  // namespace sagate::io
