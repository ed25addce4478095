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

// Internal unit system: km, ps, rad/ps, ps^2/km. With these units beta2 * Omega^2 * L
// is directly in radians.

#include <numbers>

namespace freqpath::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Vacuum speed of light in nm/ps.
inline constexpr double kSpeedOfLightNmPerPs = 299792.458;

// SMF-28 group delay, group index ~1.47.
inline constexpr double kDefaultBeta1PsPerKm = 4.9e6;

constexpr double ghz_to_rad_per_ps(double f_ghz) { return kTwoPi * f_ghz * 1e-3; }
constexpr double rad_per_ps_to_ghz(double omega) { return omega / (kTwoPi * 1e-3); }

constexpr double wavelength_nm_to_rad_per_ps(double lambda_nm) {
  return kTwoPi * kSpeedOfLightNmPerPs / lambda_nm;
}
constexpr double rad_per_ps_to_wavelength_nm(double omega) {
  return kTwoPi * kSpeedOfLightNmPerPs / omega;
}

}  // namespace freqpath::units
