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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sagate/experiments.hpp"

namespace sagate::io {

/// Column-major data for a CSV artifact. NaN cells are written as "nan".
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 12 significant digits, shortest form.
std::string format_number(double x);
std::string to_csv(const Table& table);
void write_text(const std::filesystem::path& path, const std::string& text);

/// UTC time as YYYYMMDDTHHMMSSZ.
std::string utc_timestamp();
/// <experiment>_<preset>_<timestamp>
std::string artifact_stem(const std::string& experiment, const std::string& preset, const std::string& timestamp);

/// JSON number, or null for non-finite values.
nlohmann::json number(double x);
nlohmann::json numbers(const std::vector<double>& xs);

Table calibration_table(const experiments::CalibrationResult& r, double g);
nlohmann::json calibration_json(const experiments::CalibrationResult& r);

Table trajectory_table(const experiments::TrajectoryResult& r);
nlohmann::json trajectory_json(const experiments::TrajectoryResult& r);

/// Long format: one row per (omega, time) cell.
Table robustness_table(const experiments::RobustnessGrid& g);
nlohmann::json robustness_json(const experiments::RobustnessGrid& g);

Table cz_table(const experiments::CzResult& r);
nlohmann::json cz_json(const experiments::CzResult& r);

Table ramsey_table(const experiments::RamseyResult& r);
nlohmann::json ramsey_json(const experiments::RamseyResult& r);

/// With a reference run the reference columns are appended.
Table rb_table(const experiments::RbResult& r, const experiments::RbResult* reference = nullptr);
nlohmann::json rb_json(const experiments::RbResult& r);

/// Columns t_ns, F_rad, Fdot_rad_per_s, eps.
Table waveform_table(const pulses::Waveform& w);

}  // namespace sagate::io
