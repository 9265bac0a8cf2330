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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "sagate/error.hpp"
#include "sagate/io.hpp"

namespace sagate::cli {

namespace {

using nlohmann::json;
namespace ex = sagate::experiments;

constexpr double kMHz = 2.0 * std::numbers::pi * 1e6;

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

double get_number(const json& c, const std::string& key, double fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
  return c[key].get<double>();
}

int get_int(const json& c, const std::string& key, int fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
  return c[key].get<int>();
}

bool get_bool(const json& c, const std::string& key, bool fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_boolean()) throw ConfigError("field '" + key + "' must be true or false");
  return c[key].get<bool>();
}

std::string get_string(const json& c, const std::string& key, const std::string& fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_string()) throw ConfigError("field '" + key + "' must be a string");
  return c[key].get<std::string>();
}

double get_duration(const json& c, const std::string& key, double fallback) {
  return c.contains(key) ? parse_duration(c[key], key) : fallback;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::array<double, 3> get_axis(const json& c, const std::string& key, std::array<double, 3> fallback) {
  if (!c.contains(key)) return fallback;
  const json& v = c[key];
  require(v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number_integer(),
          "field '" + key + "' must be [lo, hi, count]");
  return {v[0].get<double>(), v[1].get<double>(), static_cast<double>(v[2].get<int>())};
}

void check_axis(const std::array<double, 3>& a, const std::string& key) {
  require(a[2] >= 1, "field '" + key + "' count must be >= 1");
  require(a[0] > 0.0, "field '" + key + "' lower bound must be > 0");
  require(a[2] == 1 || a[1] > a[0], "field '" + key + "' upper bound must exceed the lower bound");
}

bool stochastic(const std::string& experiment) { return experiment == "rb"; }

bool supports_decoherence(const std::string& experiment) {
  return experiment == "trajectory" || experiment == "robustness" || experiment == "cz";
}

double default_duration(const std::string& experiment, const std::string& gate) {
  if (experiment == "trajectory") return 80e-9;
  if (experiment == "synth") return gate == "cz" ? 60e-9 : 80e-9;
  return 60e-9;  // T_half of the CZ
}

std::string default_preset(const std::string& experiment, const std::string& gate) {
  if (experiment == "cz" || experiment == "ramsey" || experiment == "rb") return "cz-point";
  if (experiment == "synth" && gate == "cz") return "cz-point";
  return "swap-point";
}

json resolved_json(const RunConfig& c, const json& device) {
  json r = {{"experiment", c.experiment}, {"preset", c.preset}, {"device", device},
            {"dt", c.dt},                 {"output_dir", c.output_dir.string()}};
  const std::string& e = c.experiment;
  if (supports_decoherence(e)) r["decoherence"] = c.decoherence;
  if (e == "calibrate") {
    r["amplitudes"] = c.amplitudes;
    r["t_max"] = c.t_max;
  }
  if (e == "trajectory" || e == "cz" || e == "ramsey" || e == "rb" || e == "synth") r["T"] = c.duration;
  if (e == "trajectory" || e == "cz" || e == "ramsey" || e == "synth")
    r["omega0_mhz"] = c.omega0 ? io::number(*c.omega0 / kMHz) : json(nullptr);
  if (e == "trajectory") {
    r["scheme"] = ex::to_string(c.scheme);
    r["tomography"] = c.tomography;
  }
  if (e == "trajectory" || e == "cz") r["stride"] = c.stride;
  if (e == "robustness") {
    r["scheme"] = ex::to_string(c.scheme);
    r["omega_axis"] = {c.omega_axis[0], c.omega_axis[1], static_cast<int>(c.omega_axis[2])};
    r["time_axis"] = {c.time_axis[0], c.time_axis[1], static_cast<int>(c.time_axis[2])};
    r["omega_xc_over_g"] = c.omega_xc_over_g;
    r["t_c"] = c.t_c;
  }
  if (e == "rb") {
    r["variant"] = ex::to_string(c.variant);
    r["m_list"] = c.m_list;
    r["k"] = c.k;
    r["seed"] = *c.seed;
    r["gate_model"] = c.gate_model;
    if (c.gate_model == "depolarizing") r["p0"] = c.p0;
    if (c.gate_model == "lindblad") {
      r["layer_idle"] = c.layer_idle;
      r["idle_duration"] = c.idle_duration.value_or(2.0 * c.duration);
    }
  }
  if (e == "ramsey") r["phases"] = c.phases;
  if (e == "synth") r["gate"] = c.gate;
  return r;
}

ex::GateModel build_gate_model(const RunConfig& c) {
  if (c.gate_model == "ideal") return ex::ideal_gate_model();
  if (c.gate_model == "depolarizing") return ex::depolarizing_gate_model(c.p0);
  ex::LindbladModelOptions o;
  o.t_half = c.duration;
  o.layer_idle = c.layer_idle;
  o.idle_duration = c.idle_duration;
  o.dt = c.dt;
  return ex::lindblad_gate_model(c.device, o);
}

std::string pct(double x) { return fmt("%.2f%%", 100.0 * x); }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"calibrate", "trajectory", "robustness", "cz", "ramsey", "rb", "synth"};
  return names;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "experiment", "preset", "device",     "device_file", "dt",         "output_dir",      "timestamp",
      "decoherence", "T",     "omega0_mhz", "scheme",      "tomography", "stride",          "amplitudes",
      "t_max",      "omega_axis", "time_axis", "omega_xc_over_g", "t_c", "variant",         "m_list",
      "k",          "seed",   "gate_model", "p0",          "layer_idle", "idle_duration",   "phases",
      "gate"};
  return keys;
}

double parse_duration(const json& value, const std::string& field) {
  double seconds = 0.0;
  if (value.is_number()) {
    seconds = value.get<double>();
  } else if (value.is_string()) {
    const std::string s = value.get<std::string>();
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("field '" + field + "': cannot parse duration '" + s + "'");
    }
    std::string unit = s.substr(used);
    unit.erase(std::remove(unit.begin(), unit.end(), ' '), unit.end());
    if (unit == "s" || unit.empty()) seconds = x;
    else if (unit == "ms") seconds = x * 1e-3;
    else if (unit == "us" || unit == "µs") seconds = x * 1e-6;
    else if (unit == "ns") seconds = x * 1e-9;
    else throw ConfigError("field '" + field + "': unknown time unit '" + unit + "' (use s, ms, us or ns)");
  } else {
    throw ConfigError("field '" + field + "' must be a duration such as \"80ns\"");
  }
  if (!std::isfinite(seconds) || !(seconds > 0.0))
    throw ConfigError("field '" + field + "' must be > 0 (got " + value.dump() + ")");
  return seconds;
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    json j = json::parse(f);
    if (!j.is_object()) throw ConfigError("config file '" + path.string() + "' must hold a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config file '" + path.string() + "': " + e.what());
  }
}

RunConfig resolve_config(const json& config, const std::optional<std::string>& env_output_dir) {
  require(config.is_object(), "config must be a JSON object");
  const std::set<std::string> known(config_keys().begin(), config_keys().end());
  std::vector<std::string> unknown;
  for (const auto& item : config.items())
    if (!known.count(item.key())) unknown.push_back(item.key());
  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("unknown config keys: " + list);
  }

  RunConfig c;
  c.experiment = get_string(config, "experiment", "");
  require(!c.experiment.empty(), "no experiment selected (one of calibrate, trajectory, robustness, cz, ramsey, rb, synth)");
  const auto& names = experiment_names();
  require(std::find(names.begin(), names.end(), c.experiment) != names.end(),
          "unknown experiment '" + c.experiment + "'");
  const std::string& e = c.experiment;

  c.gate = get_string(config, "gate", "swap");
  require(c.gate == "swap" || c.gate == "cz", "field 'gate' must be swap or cz");

  // Device: inline object, file, or named preset.
  const int sources = config.contains("device") + config.contains("device_file");
  require(sources <= 1, "give at most one of 'device' and 'device_file'");
  if (config.contains("device")) {
    require(config["device"].is_object(), "field 'device' must be an object");
    c.device = device::device_from_json(config["device"]);
    c.preset = get_string(config, "preset", c.device.name);
  } else if (config.contains("device_file")) {
    c.device = device::load_device(get_string(config, "device_file", ""));
    c.preset = get_string(config, "preset", c.device.name);
  } else {
    c.preset = get_string(config, "preset", default_preset(e, c.gate));
    c.device = device::preset(c.preset);
  }
  require(!c.preset.empty() && c.preset.find('/') == std::string::npos, "preset name must be non-empty without '/'");

  c.dt = get_duration(config, "dt", c.dt);
  if (config.contains("output_dir")) c.output_dir = get_string(config, "output_dir", ".");
  else if (env_output_dir && !env_output_dir->empty()) c.output_dir = *env_output_dir;
  c.timestamp = get_string(config, "timestamp", "");

  c.decoherence = get_bool(config, "decoherence", false);
  require(!c.decoherence || supports_decoherence(e), "experiment '" + e + "' does not support decoherence");

  c.duration = get_duration(config, "T", default_duration(e, c.gate));
  require(c.dt <= c.duration / 10.0, "field 'dt' must be <= T/10");
  if (config.contains("omega0_mhz") && !config["omega0_mhz"].is_null()) {
    const double w = get_number(config, "omega0_mhz", 0.0);
    require(w > 0.0, "field 'omega0_mhz' must be > 0");
    c.omega0 = w * kMHz;
  }
  c.scheme = ex::parse_scheme(get_string(config, "scheme", "superadiabatic"));
  require(e != "trajectory" || c.scheme != ex::Scheme::kDynamical,
          "field 'scheme' must be superadiabatic or adiabatic for trajectory");
  c.tomography = get_bool(config, "tomography", false);
  c.stride = get_int(config, "stride", c.stride);
  require(c.stride >= 1, "field 'stride' must be >= 1");

  c.amplitudes = get_int(config, "amplitudes", c.amplitudes);
  require(c.amplitudes >= 3, "field 'amplitudes' must be >= 3");
  c.t_max = get_duration(config, "t_max", c.t_max);

  c.omega_axis = get_axis(config, "omega_axis", c.omega_axis);
  c.time_axis = get_axis(config, "time_axis", c.time_axis);
  check_axis(c.omega_axis, "omega_axis");
  check_axis(c.time_axis, "time_axis");
  c.omega_xc_over_g = get_number(config, "omega_xc_over_g", c.omega_xc_over_g);
  require(c.omega_xc_over_g > 0.0, "field 'omega_xc_over_g' must be > 0");
  c.t_c = get_duration(config, "t_c", c.t_c);

  c.variant = ex::parse_rb_variant(get_string(config, "variant", "reference"));
  if (config.contains("m_list")) {
    const json& v = config["m_list"];
    require(v.is_array(), "field 'm_list' must be a list of integers");
    c.m_list.clear();
    for (const auto& x : v) {
      require(x.is_number_integer(), "field 'm_list' must be a list of integers");
      c.m_list.push_back(x.get<int>());
    }
  }
  require(c.m_list.size() >= 3, "field 'm_list' needs at least 3 lengths");
  for (std::size_t i = 0; i < c.m_list.size(); ++i)
    require(c.m_list[i] >= 0 && (i == 0 || c.m_list[i] > c.m_list[i - 1]),
            "field 'm_list' must be non-negative and strictly ascending");
  c.k = get_int(config, "k", c.k);
  require(c.k >= 1, "field 'k' must be >= 1");
  if (config.contains("seed") && !config["seed"].is_null()) {
    const json& s = config["seed"];
    require(s.is_number_integer() && s.get<long long>() >= 0, "field 'seed' must be a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (stochastic(e) && !c.seed) throw ConfigError("seed required for stochastic experiment");
  c.gate_model = get_string(config, "gate_model", c.gate_model);
  require(c.gate_model == "lindblad" || c.gate_model == "depolarizing" || c.gate_model == "ideal",
          "field 'gate_model' must be lindblad, depolarizing or ideal");
  c.p0 = get_number(config, "p0", c.p0);
  require(c.p0 > 0.0 && c.p0 <= 1.0, "field 'p0' must lie in (0, 1]");
  if (config.contains("layer_idle")) {
    // Zero disables the idle after single-qubit layers.
    if (config["layer_idle"].is_number() && config["layer_idle"].get<double>() == 0.0) c.layer_idle = 0.0;
    else c.layer_idle = get_duration(config, "layer_idle", c.layer_idle);
  }
  if (config.contains("idle_duration")) c.idle_duration = get_duration(config, "idle_duration", 0.0);

  c.phases = get_int(config, "phases", c.phases);
  require(c.phases >= 3, "field 'phases' must be >= 3");

  if (e == "cz" || e == "ramsey" || (e == "rb" && c.gate_model == "lindblad") || (e == "synth" && c.gate == "cz"))
    require(c.device.levels == 3, "experiment '" + e + "' needs a device with 3 levels per transmon");

  c.resolved = resolved_json(c, device::device_to_json(c.device));
  return c;
}

RunOutcome run(const RunConfig& c) {
  io::Table table;
  json results;
  json tolerances = {{"dt", c.dt}};
  std::string summary;
  const std::string& e = c.experiment;
  const auto& dev = c.device;

  if (e == "calibrate") {
    const auto amps = ex::default_calibration_amplitudes(c.amplitudes);
    const auto r = ex::calibrate_effective_coupling(dev, amps, c.t_max, c.dt);
    table = io::calibration_table(r, dev.g);
    results = io::calibration_json(r);
    tolerances["peak_smoothing_window_s"] = 2.0 * std::numbers::pi / std::abs(pulses::swap_carrier(dev));
    summary = "calibrate " + c.preset + ": fitted g/2pi = " + fmt("%.4f", r.fitted_g / kMHz) +
              " MHz, max g_eff/2pi = " + fmt("%.4f", r.max_g_eff / kMHz) + " MHz, T_QL = " +
              fmt("%.2f", r.t_ql * 1e9) + " ns";
  } else if (e == "trajectory") {
    ex::TrajectoryOptions o;
    o.dt = c.dt;
    o.stride = c.stride;
    o.decoherence = c.decoherence;
    o.emulate_tomography = c.tomography;
    o.omega0 = c.omega0;
    const auto r = ex::trajectory(c.scheme, c.duration, dev, o);
    table = io::trajectory_table(r);
    results = io::trajectory_json(r);
    summary = "trajectory " + ex::to_string(c.scheme) + " T = " + fmt("%.1f", c.duration * 1e9) +
              " ns: final P(|10>) = " + fmt("%.5f", results["final_p10"].get<double>()) +
              ", max|y| = " + fmt("%.4f", results["max_abs_y"].get<double>());
  } else if (e == "robustness") {
    ex::RobustnessOptions o;
    o.dt = c.dt;
    o.omega_xc_over_g = c.omega_xc_over_g;
    o.t_c = c.t_c;
    o.decoherence = c.decoherence;
    const auto omega = ex::linspace(c.omega_axis[0], c.omega_axis[1], static_cast<int>(c.omega_axis[2]));
    const auto time = ex::linspace(c.time_axis[0], c.time_axis[1], static_cast<int>(c.time_axis[2]));
    const auto g = ex::robustness_scan(c.scheme, omega, time, dev, o);
    table = io::robustness_table(g);
    results = io::robustness_json(g);
    summary = "robustness " + ex::to_string(c.scheme) + ": min P(|10>) = " +
              (results["min_p10"].is_null() ? std::string("n/a") : fmt("%.5f", results["min_p10"].get<double>())) +
              " over " + std::to_string(omega.size()) + "x" + std::to_string(time.size()) + " cells, " +
              std::to_string(results["invalid_cells"].get<int>()) + " invalid";
  } else if (e == "cz") {
    ex::CzOptions o;
    o.dt = c.dt;
    o.decoherence = c.decoherence;
    o.omega0 = c.omega0;
    o.stride = c.stride;
    const auto r = ex::cz_gate(dev, c.duration, o);
    table = io::cz_table(r);
    results = io::cz_json(r);
    tolerances["phase_calibration_rad"] = 1e-3;
    summary = "cz " + c.preset + (c.decoherence ? " (decoherence)" : " (ideal)") +
              ": process fidelity = " + fmt("%.5f", r.report.process_fidelity) + ", average fidelity = " +
              fmt("%.5f", r.report.average_gate_fidelity) + ", leakage = " + fmt("%.2e", r.report.leakage) +
              ", conditional phase = " + fmt("%.4f", r.conditional_phase) + " rad";
  } else if (e == "ramsey") {
    ex::CzOptions o;
    o.dt = c.dt;
    o.omega0 = c.omega0;
    o.stride = 1000000;
    const auto gate = ex::cz_gate(dev, c.duration, o);
    const auto phases = ex::linspace(0.0, 2.0 * std::numbers::pi, c.phases);
    const auto r = ex::ramsey_conditional_phase(gate.unitary, dev.levels, phases);
    table = io::ramsey_table(r);
    results = io::ramsey_json(r);
    tolerances["max_fit_residual"] = 0.05;
    summary = "ramsey " + c.preset + ": conditional phase = " + fmt("%.4f", r.conditional_phase) + " rad";
  } else if (e == "rb") {
    const auto model = build_gate_model(c);
    auto r = ex::run_rb(c.variant, c.m_list, c.k, *c.seed, model);
    std::optional<ex::RbResult> ref;
    if (c.variant != ex::RbVariant::kReference) {
      ref = ex::run_rb(ex::RbVariant::kReference, c.m_list, c.k, *c.seed, model);
      r.error_rate = ex::interleaved_error_rate(*ref, r);
    }
    table = io::rb_table(r, ref ? &*ref : nullptr);
    results = io::rb_json(r);
    if (ref) results["reference"] = io::rb_json(*ref);
    tolerances["fit_max_iterations"] = 200;
    summary = "rb " + ex::to_string(c.variant) + " (" + c.gate_model + "): ";
    if (r.fit.degenerate) summary += "fit degenerate (flat data, mean P = " + fmt("%.6f", r.mean.back()) + ")";
    else if (!r.fit.converged) summary += "fit did not converge";
    else summary += "p = " + fmt("%.5f", r.fit.p);
    if (ref && ref->fit.converged) summary += ", p_ref = " + fmt("%.5f", ref->fit.p);
    if (r.error_rate) summary += ", r = " + pct(*r.error_rate);
  } else if (e == "synth") {
    pulses::Waveform w;
    if (c.gate == "swap") {
      ex::SwapOptions o;
      o.dt = c.dt;
      o.omega0 = c.omega0;
      w = ex::synthesize_swap(dev, c.duration, o).waveform;
    } else {
      ex::CzOptions o;
      o.dt = c.dt;
      o.omega0 = c.omega0;
      o.stride = 1000000;
      w = ex::cz_gate(dev, c.duration, o).waveform;
    }
    table = io::waveform_table(w);
    double max_eps = 0.0;
    for (double x : w.eps) max_eps = std::max(max_eps, std::abs(x));
    results = {{"samples", w.size()}, {"duration_ns", w.duration() * 1e9}, {"max_abs_eps", max_eps}};
    summary = "synth " + c.gate + " " + c.preset + ": " + std::to_string(w.size()) + " samples over " +
              fmt("%.1f", w.duration() * 1e9) + " ns, max|eps| = " + fmt("%.5f", max_eps);
  } else {
    throw ConfigError("unknown experiment '" + e + "'");
  }

  const std::string timestamp = c.timestamp.empty() ? io::utc_timestamp() : c.timestamp;
  const std::string stem = io::artifact_stem(e, c.preset, timestamp);
  RunOutcome out;
  out.csv = c.output_dir / (stem + ".csv");
  out.json = c.output_dir / (stem + ".json");
  json meta = {{"experiment", e},       {"preset", c.preset},         {"timestamp", timestamp},
               {"dt", c.dt},            {"config", c.resolved},       {"tolerances", tolerances},
               {"results", results},    {"csv", out.csv.filename().string()}, {"summary", summary}};
  meta["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  io::write_text(out.csv, io::to_csv(table));
  io::write_text(out.json, meta.dump(2) + "\n");
  out.summary = summary;
  return out;
}

}  // namespace sagate::cli
