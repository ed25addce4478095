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

// Counting-experiment emulation and pattern analysis: Poissonian coincidence
// counts, visibility, and a Levenberg-Marquardt fit of the compensated Bessel
// model A J_0^2(c) + B.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "freqpath/pattern.hpp"

namespace freqpath {

struct CountingPlan {
  double pair_rate_per_s = 0.0;       // detected pairs per second at P = 1
  double accidental_rate_per_s = 0.0;  // flat background coincidences
  double dwell_s = 1.0;                // acquisition time per grid point
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for negative rates or non-positive dwell.
void validate(const CountingPlan& plan);

/// Poisson counts with mean (pair_rate * P + accidental_rate) * dwell per point.
/// Each point draws from its own stream seeded from (seed, index), so the result
/// does not depend on evaluation order.
Pattern simulate_counts(const Pattern& probabilities, const CountingPlan& plan);

/// 64-bit seed of the substream for one grid point.
std::uint64_t point_stream_seed(std::uint64_t seed, std::uint64_t index);

/// (max - min) / (max + min). Throws DataError for an all-zero pattern.
double visibility(const Pattern& pattern);
double visibility(std::span<const double> values);

inline constexpr int kFitParamCount = 5;

struct FitParams {
  double scale = 1.0;       // A
  double a = 2.8;
  double b = 2.6;
  double phi0 = 0.0;        // phase offset of the scan
  double background = 0.0;  // B

  std::array<double, kFitParamCount> as_array() const { return {scale, a, b, phi0, background}; }
  static FitParams from_array(const std::array<double, kFitParamCount>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
};

struct FitOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-10;  // on the objective decrease
  double gradient_tolerance = 1e-8;
};

struct FitResult {
  FitParams params;
  Eigen::Matrix<double, kFitParamCount, kFitParamCount> covariance;
  double chi2_per_dof = 0.0;
  bool converged = false;
  int iterations = 0;
  /// Objective after every accepted step, starting with the initial value.
  std::vector<double> objective_history;

  std::array<double, kFitParamCount> standard_errors() const;
};

/// A J_0^2(c) + B with c = sqrt(a^2 + b^2 + 2 a b cos(dphi - phi0)).
double bessel_model(const FitParams& p, double delta_phi);

/// Analytic gradient of bessel_model with respect to (A, a, b, phi0, B),
/// using dJ_0/dx = -J_1.
std::array<double, kFitParamCount> bessel_model_gradient(const FitParams& p, double delta_phi);

/// Inverse-variance weights 1 / max(y, 1).
std::vector<double> default_weights(std::span<const double> values);

/// Weighted Levenberg-Marquardt fit of bessel_model. Empty `weights` selects
/// default_weights. The result is canonicalised to a >= b >= 0 and phi0 in
/// (-pi, pi]; the covariance is (J^T W J)^{-1} at the optimum. Throws DataError
/// for fewer than 6 points or constant data.
FitResult fit_bessel_pattern(const Pattern& data, const FitParams& init,
                             std::span<const double> weights = {},
                             const FitOptions& options = {});

}  // namespace freqpath
