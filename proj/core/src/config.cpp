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

#include "freqpath/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "freqpath/errors.hpp"
#include "json.hpp"

namespace freqpath {

using json = nlohmann::json;

double reduce_phase(double phase_rad) {
  double r = std::remainder(phase_rad, units::kTwoPi);
  if (r <= -std::numbers::pi) r += units::kTwoPi;
  return r;
}

RfDrive RfDrive::make(double amplitude_s, double phase_rad, double omega_rad_per_ps) {
  if (!std::isfinite(amplitude_s) || amplitude_s < 0.0) {
    throw ConfigError("RfDrive: amplitude_s must be finite and >= 0");
  }
  if (!std::isfinite(omega_rad_per_ps) || omega_rad_per_ps <= 0.0) {
    throw ConfigError("RfDrive: RF frequency must be finite and > 0");
  }
  if (!std::isfinite(phase_rad)) {
    throw ConfigError("RfDrive: phase_rad must be finite");
  }
  return RfDrive(amplitude_s, reduce_phase(phase_rad), omega_rad_per_ps);
}

RfDrive RfDrive::with_phase(double phase_rad) const {
  return make(amplitude_s_, phase_rad, omega_rad_per_ps_);
}

RfDrive RfDrive::with_amplitude(double amplitude_s) const {
  return make(amplitude_s, phase_rad_, omega_rad_per_ps_);
}

double LinkTopology::total_distance_km() const {
  return 2.0 * shared.length_km + arm_a.length_km + arm_b.length_km;
}

double LinkTopology::delta_l_km() const { return arm_a.length_km - arm_b.length_km; }

double effective_gdd_ps2(const LinkTopology& link) {
  return 2.0 * link.shared.beta2_ps2_per_km * link.shared.length_km +
         link.arm_a.beta2_ps2_per_km * link.arm_a.length_km +
         link.arm_b.beta2_ps2_per_km * link.arm_b.length_km + link.dcm_gdd_ps2;
}

double group_delay_mismatch_ps(const LinkTopology& link) {
  return link.arm_a.beta1_ps_per_km * link.arm_a.length_km -
         link.arm_b.beta1_ps_per_km * link.arm_b.length_km;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

void validate_fiber(const FiberSpec& f, const std::string& name) {
  require(std::isfinite(f.length_km) && f.length_km >= 0.0, name + ".length_km >= 0");
  require(std::isfinite(f.beta1_ps_per_km), name + ".beta1_ps_per_km finite");
  require(std::isfinite(f.beta2_ps2_per_km), name + ".beta2_ps2_per_km finite");
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  validate_fiber(cfg.link.shared, "link.shared");
  validate_fiber(cfg.link.arm_a, "link.arm_a");
  validate_fiber(cfg.link.arm_b, "link.arm_b");
  require(std::isfinite(cfg.link.dcm_gdd_ps2), "link.dcm_gdd_ps2 finite");
  require(cfg.drive_a.omega_rad_per_ps() == cfg.drive_b.omega_rad_per_ps(),
          "drive_a and drive_b must share one RF frequency");
  require(cfg.drive_a.amplitude_s() >= 0.0 && cfg.drive_b.amplitude_s() >= 0.0,
          "drive amplitudes >= 0");
  require(std::isfinite(cfg.filter.bandwidth_rad_per_ps) &&
              cfg.filter.bandwidth_rad_per_ps >= 0.0,
          "filter.bandwidth >= 0");
  require(cfg.filter.bandwidth_rad_per_ps < cfg.omega_rad_per_ps(),
          "filter bandwidth must be below the RF bin spacing");
  require(std::isfinite(cfg.source.center_omega_rad_per_ps) &&
              cfg.source.center_omega_rad_per_ps > 0.0,
          "source center frequency > 0");
  require(cfg.solver.k_max >= 1, "solver.k_max >= 1");
  require(cfg.solver.quad_nodes >= 1, "solver.quad_nodes >= 1");
  require(std::isfinite(cfg.solver.tolerance) && cfg.solver.tolerance > 0.0,
          "solver.tolerance > 0");
}

int minimum_k_max(const ExperimentConfig& cfg) {
  const double s = std::max(cfg.drive_a.amplitude_s(), cfg.drive_b.amplitude_s());
  return static_cast<int>(std::ceil(s)) + 10;
}

bool satisfies_k_max_floor(const ExperimentConfig& cfg) {
  return cfg.solver.k_max >= minimum_k_max(cfg);
}

namespace {

const json& section(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_object()) {
    throw ConfigError(std::string("config: missing object '") + key + "'");
  }
  return doc.at(key);
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("config: missing key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, key) : fallback;
}

int integer_or(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("config: '") + key + "' must be an integer");
  }
  return v.get<int>();
}

RfDrive parse_drive(const json& d) {
  return RfDrive::make(number(d, "amplitude_s"), number_or(d, "phase_rad", 0.0),
                       units::ghz_to_rad_per_ps(number(d, "rf_freq_ghz")));
}

// Boundary value whose forward conversion reproduces `internal` bit for bit, so
// that serialize/parse round trips are exact.
template <class Forward>
double invert_exactly(double internal, double guess, Forward forward) {
  char text[32];
  std::snprintf(text, sizeof text, "%.15g", guess);
  const double rounded = std::strtod(text, nullptr);
  if (forward(rounded) == internal) return rounded;
  if (forward(guess) == internal) return guess;
  double up = guess;
  double down = guess;
  for (int i = 0; i < 64; ++i) {
    up = std::nextafter(up, INFINITY);
    if (forward(up) == internal) return up;
    down = std::nextafter(down, -INFINITY);
    if (forward(down) == internal) return down;
  }
  return guess;
}

json drive_to_json(const RfDrive& d) {
  const double omega = d.omega_rad_per_ps();
  const double ghz = invert_exactly(omega, units::rad_per_ps_to_ghz(omega),
                                    [](double f) { return units::ghz_to_rad_per_ps(f); });
  return {{"amplitude_s", d.amplitude_s()}, {"phase_rad", d.phase_rad()}, {"rf_freq_ghz", ghz}};
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  ExperimentConfig cfg;
  try {
    if (doc.contains("source")) {
      const json& src = section(doc, "source");
      const double lambda = number_or(src, "center_wavelength_nm", 1550.0);
      if (!(lambda > 0.0)) throw ConfigError("invalid config: center_wavelength_nm > 0");
      cfg.source.center_omega_rad_per_ps = units::wavelength_nm_to_rad_per_ps(lambda);
    }

    const json& link = section(doc, "link");
    const double beta1 = number_or(link, "beta1_ps_per_km", units::kDefaultBeta1PsPerKm);
    const double beta2 = number(link, "beta2_ps2_per_km");
    cfg.link.shared = {number(link, "shared_km"), beta1, beta2};
    cfg.link.arm_a = {number(link, "arm_a_km"), beta1, beta2};
    cfg.link.arm_b = {number(link, "arm_b_km"), beta1, beta2};
    cfg.link.dcm_gdd_ps2 = number_or(link, "dcm_gdd_ps2", 0.0);
    if (link.contains("segments")) {
      const json& seg = link.at("segments");
      if (!seg.is_object()) throw ConfigError("config: link.segments must be an object");
      for (auto [name, fiber] : {std::pair{"shared", &cfg.link.shared},
                                 std::pair{"arm_a", &cfg.link.arm_a},
                                 std::pair{"arm_b", &cfg.link.arm_b}}) {
        if (!seg.contains(name)) continue;
        const json& s = seg.at(name);
        fiber->beta1_ps_per_km = number_or(s, "beta1_ps_per_km", fiber->beta1_ps_per_km);
        fiber->beta2_ps2_per_km = number_or(s, "beta2_ps2_per_km", fiber->beta2_ps2_per_km);
      }
    }

    cfg.drive_a = parse_drive(section(doc, "drive_a"));
    cfg.drive_b = parse_drive(section(doc, "drive_b"));

    const json& filter = section(doc, "filter");
    cfg.filter.bin_index_n = integer_or(filter, "bin_index_n", 0);
    cfg.filter.bandwidth_rad_per_ps = units::ghz_to_rad_per_ps(number(filter, "bandwidth_ghz"));

    if (doc.contains("solver")) {
      const json& solver = section(doc, "solver");
      cfg.solver.k_max = integer_or(solver, "k_max", cfg.solver.k_max);
      cfg.solver.quad_nodes = integer_or(solver, "quad_nodes", cfg.solver.quad_nodes);
      cfg.solver.tolerance = number_or(solver, "tolerance", cfg.solver.tolerance);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  const double omega0 = cfg.source.center_omega_rad_per_ps;
  const double lambda =
      invert_exactly(omega0, units::rad_per_ps_to_wavelength_nm(omega0),
                     [](double nm) { return units::wavelength_nm_to_rad_per_ps(nm); });
  const double bw = cfg.filter.bandwidth_rad_per_ps;
  const double bw_ghz = invert_exactly(bw, units::rad_per_ps_to_ghz(bw),
                                       [](double f) { return units::ghz_to_rad_per_ps(f); });

  const FiberSpec& base = cfg.link.shared;
  json link = {{"shared_km", cfg.link.shared.length_km},
               {"arm_a_km", cfg.link.arm_a.length_km},
               {"arm_b_km", cfg.link.arm_b.length_km},
               {"beta1_ps_per_km", base.beta1_ps_per_km},
               {"beta2_ps2_per_km", base.beta2_ps2_per_km},
               {"dcm_gdd_ps2", cfg.link.dcm_gdd_ps2}};
  json segments = json::object();
  for (auto [name, fiber] :
       {std::pair{"arm_a", &cfg.link.arm_a}, std::pair{"arm_b", &cfg.link.arm_b}}) {
    if (fiber->beta1_ps_per_km != base.beta1_ps_per_km ||
        fiber->beta2_ps2_per_km != base.beta2_ps2_per_km) {
      segments[name] = {{"beta1_ps_per_km", fiber->beta1_ps_per_km},
                        {"beta2_ps2_per_km", fiber->beta2_ps2_per_km}};
    }
  }
  if (!segments.empty()) link["segments"] = segments;

  json doc = {{"source", {{"center_wavelength_nm", lambda}}},
              {"link", link},
              {"drive_a", drive_to_json(cfg.drive_a)},
              {"drive_b", drive_to_json(cfg.drive_b)},
              {"filter", {{"bin_index_n", cfg.filter.bin_index_n}, {"bandwidth_ghz", bw_ghz}}},
              {"solver",
               {{"k_max", cfg.solver.k_max},
                {"quad_nodes", cfg.solver.quad_nodes},
                {"tolerance", cfg.solver.tolerance}}}};
  return doc.dump(2);
}

ExperimentConfig reference_config() {
  ExperimentConfig cfg;
  const double omega = units::ghz_to_rad_per_ps(12.5);
  cfg.drive_a = RfDrive::make(2.8, 0.0, omega);
  cfg.drive_b = RfDrive::make(2.6, 0.0, omega);
  cfg.link.shared = {0.0, units::kDefaultBeta1PsPerKm, -22.0};
  cfg.link.arm_a = cfg.link.shared;
  cfg.link.arm_b = cfg.link.shared;
  cfg.filter = {0, units::ghz_to_rad_per_ps(3.0)};
  return cfg;
}

}  // namespace freqpath
