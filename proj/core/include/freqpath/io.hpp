// Copyright 2026 The freqpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// File formats: pattern / counts CSV, fit-result JSON, heatmap bundle, run
// manifest. Numbers are written with 15 significant digits.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "freqpath/pattern.hpp"
#include "freqpath/virtual_lab.hpp"

namespace freqpath {

std::string format_number(double v);

/// Header `delta_phi_rad,probability`.
void write_pattern_csv(const std::filesystem::path& path, const Pattern& pattern);
std::string pattern_csv(const Pattern& pattern);

/// Header `delta_phi_rad,counts,dwell_s`.
void write_counts_csv(const std::filesystem::path& path, const Pattern& counts);
std::string counts_csv(const Pattern& counts);

/// Parses a counts CSV. Throws DataError on malformed input.
Pattern read_counts_csv(const std::filesystem::path& path);
Pattern parse_counts_csv(std::string_view text);

/// Params, standard errors, covariance, chi2_per_dof, converged flag.
std::string fit_result_json(const FitResult& fit);

/// JSON object with keys scale, a, b, phi0, background (all optional, falling
/// back to `fallback`). Throws ConfigError on malformed input.
FitParams parse_fit_params(std::string_view json_text, const FitParams& fallback = {});

/// JSON object with pair_rate_per_s, accidental_rate_per_s, dwell_s and an
/// optional seed. Throws ConfigError on malformed input.
CountingPlan parse_counting_plan(std::string_view json_text);

/// Grid, lengths, probability matrix (one row per length), visibilities and
/// the config snapshot, for external heatmap plotting.
std::string heatmap_json(const ExperimentConfig& cfg, const std::vector<double>& lengths_km,
                         const std::vector<Pattern>& patterns);

struct RunManifest {
  std::string command;
  std::string config_hash;  // sha256 of the consumed input file
  std::vector<std::string> outputs;
  std::string engine_version = kEngineVersion;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<double> lengths_km;  // distance scans only
  std::string config_snapshot;     // serialized config, may be empty
};

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

/// Lower-case hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Current UTC time, or SOURCE_DATE_EPOCH when that variable is set.
std::string utc_timestamp();

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace freqpath
