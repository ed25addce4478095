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

// Experiment description shared by every module: RF drives, fiber link, filters,
// source and solver settings. All quantities use the internal unit system of
// units.hpp; the boundary conversions (GHz, nm) happen in load_config.

#include <filesystem>
#include <string>
#include <string_view>

#include "freqpath/units.hpp"

namespace freqpath {

/// One phase modulator's sinusoidal drive: amplitude s = V/V_pi, phase, and
/// angular RF frequency. The phase is stored reduced to (-pi, pi].
class RfDrive {
 public:
  RfDrive() = default;

  /// Throws ConfigError if amplitude_s < 0 or omega_rad_per_ps <= 0.
  static RfDrive make(double amplitude_s, double phase_rad, double omega_rad_per_ps);

  double amplitude_s() const { return amplitude_s_; }
  double phase_rad() const { return phase_rad_; }
  double omega_rad_per_ps() const { return omega_rad_per_ps_; }

  RfDrive with_phase(double phase_rad) const;
  RfDrive with_amplitude(double amplitude_s) const;

  bool operator==(const RfDrive&) const = default;

 private:
  RfDrive(double s, double phase, double omega)
      : amplitude_s_(s), phase_rad_(phase), omega_rad_per_ps_(omega) {}

  double amplitude_s_ = 0.0;
  double phase_rad_ = 0.0;
  double omega_rad_per_ps_ = units::ghz_to_rad_per_ps(12.5);
};

/// Reduces an angle to (-pi, pi].
double reduce_phase(double phase_rad);

struct FiberSpec {
  double length_km = 0.0;
  double beta1_ps_per_km = units::kDefaultBeta1PsPerKm;
  double beta2_ps2_per_km = 0.0;

  bool operator==(const FiberSpec&) const = default;
};

/// Shared spool L0 followed by the 3 dB split into arms A and B. The DCM sits in
/// arm A and is an ideal quadratic spectral phase.
struct LinkTopology {
  FiberSpec shared;
  FiberSpec arm_a;
  FiberSpec arm_b;
  double dcm_gdd_ps2 = 0.0;

  /// L = 2 L0 + L_A + L_B
  double total_distance_km() const;
  /// dL = L_A - L_B
  double delta_l_km() const;

  bool operator==(const LinkTopology&) const = default;
};

struct FilterSpec {
  int bin_index_n = 0;
  double bandwidth_rad_per_ps = 0.0;  // 0: ideal monochromatic filter

  bool operator==(const FilterSpec&) const = default;
};

enum class DensityModel { kFlat };

struct SourceSpec {
  double center_omega_rad_per_ps = units::wavelength_nm_to_rad_per_ps(1550.0);
  DensityModel density_model = DensityModel::kFlat;

  bool operator==(const SourceSpec&) const = default;
};

struct SolverSettings {
  int k_max = 40;
  int quad_nodes = 33;
  double tolerance = 1e-12;

  bool operator==(const SolverSettings&) const = default;
};

struct ExperimentConfig {
  SourceSpec source;
  LinkTopology link;
  RfDrive drive_a;
  RfDrive drive_b;
  FilterSpec filter;
  SolverSettings solver;

  /// The common RF frequency Omega (both drives share it).
  double omega_rad_per_ps() const { return drive_a.omega_rad_per_ps(); }

  bool operator==(const ExperimentConfig&) const = default;
};

/// Structural invariants: non-negative lengths and amplitudes, equal RF
/// frequencies, non-negative bandwidth, solver settings >= 1. Throws ConfigError
/// naming the violated invariant.
void validate(const ExperimentConfig& cfg);

/// k_max >= ceil(max(a, b)) + 10. Solvers require it; `validate` reports it.
int minimum_k_max(const ExperimentConfig& cfg);
bool satisfies_k_max_floor(const ExperimentConfig& cfg);

/// Residual quadratic spectral phase coefficient: sum over segments of
/// beta2 * length (the shared spool counts twice, once per photon) plus the DCM
/// group-delay dispersion. Zero means perfect compensation.
double effective_gdd_ps2(const LinkTopology& link);

/// Group-delay mismatch between the arms, beta1_A L_A - beta1_B L_B (ps). The
/// shared spool cancels between the photons.
double group_delay_mismatch_ps(const LinkTopology& link);

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// JSON document in the load_config schema. parse_config(serialize_config(c)) == c
/// for every config whose frequencies are reachable from GHz and nm inputs.
std::string serialize_config(const ExperimentConfig& cfg);

/// Config used throughout the tests and examples: a = 2.8, b = 2.6, Omega/2pi =
/// 12.5 GHz, beta2 = -22 ps^2/km, filter bandwidth 3 GHz at n = 0, zero length.
ExperimentConfig reference_config();

}  // namespace freqpath
