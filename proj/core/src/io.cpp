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

#include "freqpath/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "freqpath/errors.hpp"
#include "json.hpp"

namespace freqpath {

using json = nlohmann::json;

std::string format_number(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.15g", v);
  return buf.data();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string pattern_csv(const Pattern& pattern) {
  std::string out = "delta_phi_rad,probability\n";
  for (std::size_t i = 0; i < pattern.values.size(); ++i) {
    out += format_number(pattern.delta_phi_grid[i]);
    out += ',';
    out += format_number(pattern.values[i]);
    out += '\n';
  }
  return out;
}

void write_pattern_csv(const std::filesystem::path& path, const Pattern& pattern) {
  write_text_file(path, pattern_csv(pattern));
}

std::string counts_csv(const Pattern& counts) {
  const double dwell = counts.meta.counting ? counts.meta.counting->dwell_s : 1.0;
  const std::string dwell_text = format_number(dwell);
  std::string out = "delta_phi_rad,counts,dwell_s\n";
  for (std::size_t i = 0; i < counts.values.size(); ++i) {
    out += format_number(counts.delta_phi_grid[i]);
    out += ',';
    out += format_number(counts.values[i]);
    out += ',';
    out += dwell_text;
    out += '\n';
  }
  return out;
}

void write_counts_csv(const std::filesystem::path& path, const Pattern& counts) {
  write_text_file(path, counts_csv(counts));
}

namespace {

double parse_field(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size() || !std::isfinite(v)) {
    throw DataError("counts CSV line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

Pattern parse_counts_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DataError("counts CSV: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "delta_phi_rad,counts,dwell_s") {
    throw DataError("counts CSV: expected header 'delta_phi_rad,counts,dwell_s'");
  }
  Pattern p;
  p.meta.kind = PatternKind::kCounts;
  CountingRecord record;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 3) {
      throw DataError("counts CSV line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const double x = parse_field(fields[0], line_no);
    const double y = parse_field(fields[1], line_no);
    record.dwell_s = parse_field(fields[2], line_no);
    if (y < 0.0) throw DataError("counts CSV line " + std::to_string(line_no) + ": negative count");
    p.delta_phi_grid.push_back(x);
    p.values.push_back(y);
  }
  if (p.values.empty()) throw DataError("counts CSV: no data rows");
  p.meta.counting = record;
  return p;
}

Pattern read_counts_csv(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(std::string("counts CSV: ") + e.what());
  }
  return parse_counts_csv(text);
}

std::string fit_result_json(const FitResult& fit) {
  const auto errs = fit.standard_errors();
  const FitParams& p = fit.params;
  json cov = json::array();
  for (int i = 0; i < kFitParamCount; ++i) {
    json row = json::array();
    for (int j = 0; j < kFitParamCount; ++j) row.push_back(fit.covariance(i, j));
    cov.push_back(row);
  }
  json doc = {
      {"params",
       {{"scale", p.scale}, {"a", p.a}, {"b", p.b}, {"phi0", p.phi0}, {"background", p.background}}},
      {"standard_errors",
       {{"scale", errs[0]}, {"a", errs[1]}, {"b", errs[2]}, {"phi0", errs[3]}, {"background", errs[4]}}},
      {"covariance", cov},
      {"chi2_per_dof", fit.chi2_per_dof},
      {"converged", fit.converged},
      {"iterations", fit.iterations},
      {"engine_version", kEngineVersion}};
  return doc.dump(2) + "\n";
}

FitParams parse_fit_params(std::string_view json_text, const FitParams& fallback) {
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("fit init: expected a JSON object");
    FitParams p = fallback;
    auto take = [&](const char* key, double& dst) {
      if (doc.contains(key)) dst = doc.at(key).get<double>();
    };
    take("scale", p.scale);
    take("a", p.a);
    take("b", p.b);
    take("phi0", p.phi0);
    take("background", p.background);
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("fit init: ") + e.what());
  }
}

CountingPlan parse_counting_plan(std::string_view json_text) {
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("counting plan: expected a JSON object");
    CountingPlan plan;
    plan.pair_rate_per_s = doc.at("pair_rate_per_s").get<double>();
    plan.accidental_rate_per_s = doc.value("accidental_rate_per_s", 0.0);
    plan.dwell_s = doc.at("dwell_s").get<double>();
    plan.seed = doc.value("seed", std::uint64_t{0});
    validate(plan);
    return plan;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("counting plan: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("counting plan: ") + e.what());
  }
}

std::string heatmap_json(const ExperimentConfig& cfg, const std::vector<double>& lengths_km,
                         const std::vector<Pattern>& patterns) {
  json matrix = json::array();
  json vis = json::array();
  for (const Pattern& p : patterns) {
    matrix.push_back(p.values);
    vis.push_back(visibility(p));
  }
  json doc = {{"delta_phi_rad", patterns.empty() ? std::vector<double>{} : patterns.front().delta_phi_grid},
              {"lengths_km", lengths_km},
              {"probability", matrix},
              {"visibility", vis},
              {"normalization", kNormalizationTag},
              {"engine_version", kEngineVersion},
              {"config", json::parse(serialize_config(cfg))}};
  return doc.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
  json doc = {{"command", m.command},
              {"config_hash", m.config_hash},
              {"outputs", m.outputs},
              {"engine_version", m.engine_version},
              {"timestamp", m.timestamp}};
  if (!m.lengths_km.empty()) doc["lengths_km"] = m.lengths_km;
  if (!m.config_snapshot.empty()) doc["config"] = json::parse(m.config_snapshot);
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  write_text_file(path, manifest_json(manifest));
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_text_file(path));
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace freqpath
