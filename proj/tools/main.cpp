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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "sagate/error.hpp"

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sagate::ConfigError("--" + flag + ": expected comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

json parse_axis(const std::string& text, const std::string& flag) {
  std::stringstream ss(text);
  std::string lo, hi, count;
  if (!std::getline(ss, lo, ',') || !std::getline(ss, hi, ',') || !std::getline(ss, count))
    throw sagate::ConfigError("--" + flag + ": expected lo,hi,count");
  try {
    return json::array({std::stod(lo), std::stod(hi), std::stoi(count)});
  } catch (const std::exception&) {
    throw sagate::ConfigError("--" + flag + ": expected lo,hi,count");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sagate: superadiabatic two-qubit gate simulator"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::string> experiment, preset, device_file, dt, output_dir, timestamp, duration, scheme, t_max,
      omega_axis, time_axis, t_c, variant, m_list, gate_model, layer_idle, idle_duration, gate;
  std::optional<double> omega0_mhz, omega_xc_over_g, p0;
  std::optional<int> stride, amplitudes, k, phases;
  std::optional<std::uint64_t> seed;
  bool decoherence = false, ideal = false, tomography = false;

  app.add_option("--config", config_path, "JSON run configuration; flags override its values");
  app.add_option("--experiment", experiment, "Experiment when no subcommand is given");
  app.add_option("--preset", preset, "Device preset (swap-point, cz-point)");
  app.add_option("--device-file", device_file, "Device description in JSON");
  app.add_option("--dt", dt, "Time step, e.g. 0.1ns");
  app.add_option("--output-dir", output_dir, std::string("Output directory (default $") + sagate::cli::kOutputDirEnv + " or .)");
  app.add_option("--timestamp", timestamp, "Timestamp used in artifact names (default: current UTC time)");
  app.add_flag("--decoherence", decoherence, "Include T1/Tphi");
  app.add_flag("--ideal", ideal, "Ideal (unitary) dynamics");
  app.add_option("--T", duration, "Duration (T, or T_half for the CZ), e.g. 80ns");
  app.add_option("--omega0-mhz", omega0_mhz, "Schedule amplitude Omega0/2pi in MHz");
  app.add_option("--scheme", scheme, "superadiabatic, adiabatic or dynamical");
  app.add_flag("--tomography", tomography, "Emulate X/2, Y/2 pre-rotations for the Bloch vector");
  app.add_option("--stride", stride, "Record every n-th step");
  app.add_option("--amplitudes", amplitudes, "Number of calibration amplitudes");
  app.add_option("--t-max", t_max, "Calibration window, e.g. 1us");
  app.add_option("--omega-axis", omega_axis, "Robustness Omega_x/Omega_xc axis lo,hi,count");
  app.add_option("--time-axis", time_axis, "Robustness T/T_c axis lo,hi,count");
  app.add_option("--omega-xc-over-g", omega_xc_over_g, "Robustness design coupling Omega_xc/g");
  app.add_option("--t-c", t_c, "Robustness design duration, e.g. 110ns");
  app.add_option("--variant", variant, "RB variant: reference, interleaved-cz, interleaved-idle");
  app.add_option("--m-list", m_list, "RB sequence lengths, comma separated");
  app.add_option("--k", k, "RB randomizations per length");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--gate-model", gate_model, "RB gate model: lindblad, depolarizing, ideal");
  app.add_option("--p0", p0, "Depolarizing parameter per Clifford");
  app.add_option("--layer-idle", layer_idle, "Idle after each single-qubit layer, e.g. 30ns");
  app.add_option("--idle-duration", idle_duration, "Interleaved idle duration (default 2 T_half)");
  app.add_option("--phases", phases, "Number of Ramsey phases over [0, 2 pi]");
  app.add_option("--gate", gate, "Waveform to synthesize: swap or cz");

  for (const auto& name : sagate::cli::experiment_names()) app.add_subcommand(name, "Run the " + name + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    json config = config_path.empty() ? json::object() : sagate::cli::load_config_file(config_path);
    auto set = [&](const char* key, const auto& value) {
      if (value) config[key] = *value;
    };
    set("experiment", experiment);
    for (auto* sub : app.get_subcommands()) config["experiment"] = sub->get_name();
    set("preset", preset);
    set("device_file", device_file);
    if (device_file) config.erase("device");
    set("dt", dt);
    set("output_dir", output_dir);
    set("timestamp", timestamp);
    if (decoherence && ideal) throw sagate::ConfigError("--decoherence and --ideal are mutually exclusive");
    if (decoherence) config["decoherence"] = true;
    if (ideal) config["decoherence"] = false;
    set("T", duration);
    set("omega0_mhz", omega0_mhz);
    set("scheme", scheme);
    if (tomography) config["tomography"] = true;
    set("stride", stride);
    set("amplitudes", amplitudes);
    set("t_max", t_max);
    if (omega_axis) config["omega_axis"] = parse_axis(*omega_axis, "omega-axis");
    if (time_axis) config["time_axis"] = parse_axis(*time_axis, "time-axis");
    set("omega_xc_over_g", omega_xc_over_g);
    set("t_c", t_c);
    set("variant", variant);
    if (m_list) config["m_list"] = parse_int_list(*m_list, "m-list");
    set("k", k);
    set("seed", seed);
    set("gate_model", gate_model);
    set("p0", p0);
    set("layer_idle", layer_idle);
    set("idle_duration", idle_duration);
    set("phases", phases);
    set("gate", gate);

    std::optional<std::string> env_dir;
    if (const char* env = std::getenv(sagate::cli::kOutputDirEnv)) env_dir = env;
    const auto resolved = sagate::cli::resolve_config(config, env_dir);
    const auto outcome = sagate::cli::run(resolved);
    std::cout << outcome.summary << '\n'
              << "wrote " << outcome.csv.string() << " and " << outcome.json.string() << '\n';
    return 0;
  } catch (const sagate::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
