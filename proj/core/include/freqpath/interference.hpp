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

// Closed-form coincidence probability for two phase-modulated, frequency-
// anticorrelated photons behind a dispersive link and conjugate bin filters:
//
//   P_n(dphi) = int_band dw g(w) | sum_k J_k(a) J_{-k}(b) e^{i Phi(k, n, w)} |^2
//   Phi(k, n, w) = k [dphi + beta1 Omega dL - D (w + n Omega) Omega] + k^2 D Omega^2 / 2
//
// where D is the effective group-delay dispersion (beta2 L plus the DCM).

#include <span>
#include <vector>

#include "freqpath/config.hpp"
#include "freqpath/pattern.hpp"

namespace freqpath {

struct PhaseContext {
  double delta_phi_rad = 0.0;
  int bin_n = 0;
  double effective_gdd_ps2 = 0.0;
  /// Group-delay phase entering the k-linear term, including any thermal
  /// drift. See make_phase_context for its sign.
  double beta1_delta_l_term_rad = 0.0;
  double omega_rad_per_ps = units::ghz_to_rad_per_ps(12.5);
};

/// Phase context for `cfg` at scan position `delta_phi`. The total phase
/// difference is delta_phi + (alpha - beta) from the configured drive phases.
/// The group-delay term is -Omega (beta1_A L_A - beta1_B L_B) + extra_group_phase_rad:
/// with propagation e^{+i beta(w) L} applied before the modulators, a longer arm A
/// retards the pattern.
PhaseContext make_phase_context(const ExperimentConfig& cfg, double delta_phi,
                                double extra_group_phase_rad = 0.0);

/// Phi(k, n, w) as written above.
double dispersion_phase(int k, const PhaseContext& ctx, double omega_detuning);

/// Number of sidebands kept in the k-sum: min(ceil(max(a, b)) + 30, k_max).
int engine_k_max(const ExperimentConfig& cfg);

/// |J_K(a) J_K(b)| at the engine truncation; above solver.tolerance the result
/// is flagged with a truncation warning.
double truncation_tail(const ExperimentConfig& cfg);

/// Band-conditioned coincidence probability. Gauss-Legendre quadrature with
/// solver.quad_nodes nodes over the filter band; the monochromatic limit
/// evaluates the integrand at w = 0. Throws SolverError if k_max is below
/// the floor of minimum_k_max.
double coincidence_probability(const ExperimentConfig& cfg, double delta_phi,
                               double extra_group_phase_rad = 0.0);

/// J_0(c)^2 with c = sqrt(a^2 + b^2 + 2ab cos dphi): the fully compensated pattern.
double compensated_probability(double a, double b, double delta_phi);

/// Evaluates coincidence_probability on every grid point. The grid must be
/// non-empty and strictly increasing.
Pattern pattern_scan(const ExperimentConfig& cfg, std::span<const double> grid,
                     double extra_group_phase_rad = 0.0);

/// `cfg` re-targeted to total length `total_km`: arms and DCM are kept, the
/// shared spool becomes (total_km - L_A - L_B) / 2.
ExperimentConfig with_total_distance(const ExperimentConfig& cfg, double total_km);

/// One pattern per total length, all on the same grid.
std::vector<Pattern> distance_scan(const ExperimentConfig& cfg,
                                   std::span<const double> lengths_km,
                                   std::span<const double> grid);

/// Distance after which the dispersion phase beta2 Omega^2 L / 2 reaches 2 pi,
/// i.e. 4 pi / (|beta2| Omega^2). Infinite for beta2 = 0.
double revival_length_km(double beta2_ps2_per_km, double omega_rad_per_ps);

/// Default thermal coefficient: 1 K shifts the group-delay phase by 2 pi per km.
inline constexpr double kThermalPhasePerKelvinKm = units::kTwoPi;

/// Linear thermal drift kappa * dT * L of the group-delay term.
double thermal_phase_drift(double delta_t_kelvin, double length_km,
                           double coefficient = kThermalPhasePerKelvinKm);

}  // namespace freqpath
