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

#include "freqpath/interference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "freqpath/errors.hpp"
#include "freqpath/quadrature.hpp"
#include "freqpath/special_fn.hpp"

namespace freqpath {

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("linspace: points must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
  out.back() = hi;
  return out;
}

std::vector<double> default_phase_grid() {
  return linspace(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 241);
}

PhaseContext make_phase_context(const ExperimentConfig& cfg, double delta_phi,
                                double extra_group_phase_rad) {
  PhaseContext ctx;
  ctx.omega_rad_per_ps = cfg.omega_rad_per_ps();
  ctx.delta_phi_rad = delta_phi + (cfg.drive_a.phase_rad() - cfg.drive_b.phase_rad());
  ctx.bin_n = cfg.filter.bin_index_n;
  ctx.effective_gdd_ps2 = effective_gdd_ps2(cfg.link);
  ctx.beta1_delta_l_term_rad =
      -ctx.omega_rad_per_ps * group_delay_mismatch_ps(cfg.link) + extra_group_phase_rad;
  return ctx;
}

double dispersion_phase(int k, const PhaseContext& ctx, double omega_detuning) {
  const double omega = ctx.omega_rad_per_ps;
  const double gdd = ctx.effective_gdd_ps2;
  const double kd = static_cast<double>(k);
  const double linear = ctx.delta_phi_rad + ctx.beta1_delta_l_term_rad -
                        gdd * (omega_detuning + ctx.bin_n * omega) * omega;
  return kd * linear + kd * kd * gdd * omega * omega / 2.0;
}

int engine_k_max(const ExperimentConfig& cfg) {
  const double s = std::max(cfg.drive_a.amplitude_s(), cfg.drive_b.amplitude_s());
  return std::min(static_cast<int>(std::ceil(s)) + 30, cfg.solver.k_max);
}

double truncation_tail(const ExperimentConfig& cfg) {
  const int k = engine_k_max(cfg);
  return std::abs(bessel_j(k, cfg.drive_a.amplitude_s()) * bessel_j(k, cfg.drive_b.amplitude_s()));
}

namespace {

// Everything in the probability evaluation that does not depend on dphi.
class Engine {
 public:
  explicit Engine(const ExperimentConfig& cfg)
      : cfg_(cfg), k_max_(engine_k_max(cfg)) {
    if (!satisfies_k_max_floor(cfg)) {
      throw SolverError("solver.k_max=" + std::to_string(cfg.solver.k_max) +
                        " violates the floor ceil(max(a,b))+10=" +
                        std::to_string(minimum_k_max(cfg)));
    }
    const BesselRow row_a(cfg.drive_a.amplitude_s(), k_max_);
    const BesselRow row_b(cfg.drive_b.amplitude_s(), k_max_);
    coeff_.resize(2 * static_cast<std::size_t>(k_max_) + 1);
    for (int k = -k_max_; k <= k_max_; ++k) {
      coeff_[static_cast<std::size_t>(k + k_max_)] = row_a[k] * row_b[-k];
    }

    const double band = cfg.filter.bandwidth_rad_per_ps;
    if (band == 0.0) {
      rule_.nodes = {0.0};
      rule_.weights = {1.0};
    } else {
      rule_ = gauss_legendre(cfg.solver.quad_nodes, -band / 2.0, band / 2.0);
      for (double& w : rule_.weights) w /= band;  // flat g(w) = 1 / Omega_F
    }
  }

  double probability(double delta_phi, double extra_group_phase_rad) const {
    const PhaseContext ctx = make_phase_context(cfg_, delta_phi, extra_group_phase_rad);
    double total = 0.0;
    for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
      std::complex<double> sum{};
      for (int k = -k_max_; k <= k_max_; ++k) {
        const double c = coeff_[static_cast<std::size_t>(k + k_max_)];
        if (c == 0.0) continue;
        sum += c * std::polar(1.0, dispersion_phase(k, ctx, rule_.nodes[q]));
      }
      total += rule_.weights[q] * std::norm(sum);
    }
    return total;
  }

 private:
  ExperimentConfig cfg_;
  int k_max_;
  std::vector<double> coeff_;
  QuadratureRule rule_;
};

}  // namespace

double coincidence_probability(const ExperimentConfig& cfg, double delta_phi,
                               double extra_group_phase_rad) {
  return Engine(cfg).probability(delta_phi, extra_group_phase_rad);
}

double compensated_probability(double a, double b, double delta_phi) {
  const double c2 = a * a + b * b + 2.0 * a * b * std::cos(delta_phi);
  const double j0 = bessel_j(0, std::sqrt(std::max(0.0, c2)));
  return j0 * j0;
}

Pattern pattern_scan(const ExperimentConfig& cfg, std::span<const double> grid,
                     double extra_group_phase_rad) {
  if (grid.empty()) throw std::invalid_argument("pattern_scan: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("pattern_scan: grid must be strictly increasing");
    }
  }
  const Engine engine(cfg);
  Pattern p;
  p.delta_phi_grid.assign(grid.begin(), grid.end());
  p.values.reserve(grid.size());
  for (double dphi : grid) p.values.push_back(engine.probability(dphi, extra_group_phase_rad));
  p.meta.config = cfg;
  p.meta.truncation_warning = truncation_tail(cfg) > cfg.solver.tolerance;
  return p;
}

ExperimentConfig with_total_distance(const ExperimentConfig& cfg, double total_km) {
  const double arms = cfg.link.arm_a.length_km + cfg.link.arm_b.length_km;
  if (!(total_km >= arms)) {
    throw ConfigError("distance scan: total length " + std::to_string(total_km) +
                      " km is shorter than the arms (" + std::to_string(arms) + " km)");
  }
  ExperimentConfig out = cfg;
  out.link.shared.length_km = (total_km - arms) / 2.0;
  return out;
}

std::vector<Pattern> distance_scan(const ExperimentConfig& cfg,
                                   std::span<const double> lengths_km,
                                   std::span<const double> grid) {
  std::vector<Pattern> out;
  out.reserve(lengths_km.size());
  for (double length : lengths_km) {
    if (!(length >= 0.0)) throw std::invalid_argument("distance_scan: negative length");
    out.push_back(pattern_scan(with_total_distance(cfg, length), grid));
  }
  return out;
}

double revival_length_km(double beta2_ps2_per_km, double omega_rad_per_ps) {
  if (beta2_ps2_per_km == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * units::kTwoPi / (std::abs(beta2_ps2_per_km) * omega_rad_per_ps * omega_rad_per_ps);
}

double thermal_phase_drift(double delta_t_kelvin, double length_km, double coefficient) {
  return coefficient * delta_t_kelvin * length_km;
}

}  // namespace freqpath
