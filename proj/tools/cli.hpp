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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sagate/device.hpp"
#include "sagate/experiments.hpp"

namespace sagate::cli {

inline constexpr const char* kOutputDirEnv = "SAGATE_OUTPUT_DIR";

/// Fully resolved run configuration. Durations in seconds, rates in rad/s.
struct RunConfig {
  std::string experiment;
  std::string preset;  // used in artifact names
  device::DeviceParams device;
  double dt = experiments::kDefaultDt;
  std::filesystem::path output_dir = ".";
  std::string timestamp;
  bool decoherence = false;

  double duration = 0.0;  // T for trajectory/synth-swap, T_half for cz/ramsey/rb/synth-cz
  std::optional<double> omega0;
  experiments::Scheme scheme = experiments::Scheme::kSuperadiabatic;
  bool tomography = false;
  int stride = 10;

  int amplitudes = 20;
  double t_max = 1e-6;

  std::array<double, 3> omega_axis{0.9, 1.1, 21};  // lo, hi, count
  std::array<double, 3> time_axis{0.9, 1.1, 21};
  double omega_xc_over_g = 0.36;
  double t_c = 110e-9;

  experiments::RbVariant variant = experiments::RbVariant::kReference;
  std::vector<int> m_list{1, 2, 4, 6, 8, 10, 14, 18, 24, 30, 40};
  int k = 60;
  std::optional<std::uint64_t> seed;
  std::string gate_model = "lindblad";
  double p0 = 0.98;
  double layer_idle = 30e-9;
  std::optional<double> idle_duration;

  int phases = 37;
  std::string gate = "swap";

  nlohmann::json resolved;  // echo of the effective values
};

const std::vector<std::string>& experiment_names();
const std::vector<std::string>& config_keys();

/// Seconds from a number (seconds) or a string with an s, ms, us or ns suffix.
double parse_duration(const nlohmann::json& value, const std::string& field);

nlohmann::json load_config_file(const std::filesystem::path& path);

/// Applies defaults and validates. `env_output_dir` is the fallback output
/// directory when the config has none. Throws ConfigError.
RunConfig resolve_config(const nlohmann::json& config, const std::optional<std::string>& env_output_dir = {});

struct RunOutcome {
  std::string summary;
  std::filesystem::path csv;
  std::filesystem::path json;
};

/// Runs the experiment and writes <experiment>_<preset>_<timestamp>.{csv,json}.
RunOutcome run(const RunConfig& config);

}  // namespace sagate::cli
