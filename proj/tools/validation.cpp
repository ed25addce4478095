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

#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "freqpath/interference.hpp"
#include "freqpath/modulator.hpp"
#include "freqpath/oracle.hpp"
#include "freqpath/pattern.hpp"
#include "freqpath/special_fn.hpp"
#include "json.hpp"

namespace freqpath::cli {

namespace {

ValidationCheck run_check(const std::string& name, double threshold,
                          const std::function<double(std::string&)>& measure) {
  ValidationCheck c;
  c.name = name;
  c.threshold = threshold;
  try {
    c.measured = measure(c.detail);
    c.passed = std::isfinite(c.measured) && c.measured < threshold;
  } catch (const std::exception& e) {
    c.measured = std::numeric_limits<double>::quiet_NaN();
    c.passed = false;
    c.detail = e.what();
  }
  return c;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

}  // namespace

std::vector<ValidationCheck> run_validation(const ExperimentConfig& cfg) {
  std::vector<ValidationCheck> checks;
  const double a = cfg.drive_a.amplitude_s();
  const double b = cfg.drive_b.amplitude_s();

  checks.push_back(run_check("truncation.k_max_floor", 0.5, [&](std::string& detail) {
    detail = "k_max=" + std::to_string(cfg.solver.k_max) +
             ", required >= " + std::to_string(minimum_k_max(cfg));
    return satisfies_k_max_floor(cfg) ? 0.0 : 1.0;
  }));

  checks.push_back(run_check("truncation.modulator_kernel", 1e-10, [&](std::string& detail) {
    const BinAmplitudes ka = pm_kernel(cfg.drive_a, cfg.solver.k_max);
    const BinAmplitudes kb = pm_kernel(cfg.drive_b, cfg.solver.k_max);
    detail = "lost norm of the k_max-truncated kernels";
    return std::max(1.0 - ka.norm2(), 1.0 - kb.norm2());
  }));

  checks.push_back(run_check("bessel.closure", 1e-12, [&](std::string& detail) {
    double worst = 0.0;
    for (double s : {a, b}) {
      const int k_max = static_cast<int>(std::ceil(s)) + 30;
      worst = std::max(worst, std::abs(bessel_row(s, k_max).closure_defect()));
    }
    detail = "|1 - sum_k J_k^2| for both drive amplitudes, k_max = ceil(s) + 30";
    return worst;
  }));

  checks.push_back(run_check("modulator.unitarity", 1e-10, [&](std::string& detail) {
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    for (int trial = 0; trial < 16; ++trial) {
      BinAmplitudes x(4);
      for (int k = -4; k <= 4; ++k) x[k] = {gauss(rng), gauss(rng)};
      const double scale = 1.0 / std::sqrt(x.norm2());
      for (int k = -4; k <= 4; ++k) x[k] *= scale;
      for (const RfDrive& d : {cfg.drive_a, cfg.drive_b}) {
        const BinAmplitudes y = apply_pm(x, d, 4 + kernel_half_width(d.amplitude_s()));
        worst = std::max(worst, std::abs(y.norm2() - x.norm2()));
      }
    }
    detail = "| |apply_pm(x)|^2 - |x|^2 | over 16 random normalised states";
    return worst;
  }));

  checks.push_back(run_check("oracle.equivalence", 1e-8, [&](std::string& detail) {
    double worst = 0.0;
    for (double dphi : linspace(-std::numbers::pi, std::numbers::pi, 9)) {
      const double closed = coincidence_probability(cfg, dphi);
      const double brute = oracle_probability(cfg, dphi);
      const double scale = std::max({std::abs(closed), std::abs(brute), 1e-12});
      worst = std::max(worst, std::abs(closed - brute) / scale);
    }
    detail = cfg.filter.bandwidth_rad_per_ps == 0.0 ? "monochromatic mode, relative difference"
                                                    : "relative difference over 9 phases";
    return worst;
  }));

  checks.push_back(run_check("dispersion.revival", 1e-10, [&](std::string& detail) {
    const double beta2 = cfg.link.shared.beta2_ps2_per_km;
    if (beta2 == 0.0) {
      detail = "shared beta2 = 0, no revival length; skipped";
      return 0.0;
    }
    ExperimentConfig mono = cfg;
    mono.filter.bandwidth_rad_per_ps = 0.0;
    const double lp = revival_length_km(beta2, cfg.omega_rad_per_ps());
    const double length = mono.link.total_distance_km();
    const std::vector<double> grid = default_phase_grid();
    const Pattern p0 = pattern_scan(with_total_distance(mono, length), grid);
    const Pattern p1 = pattern_scan(with_total_distance(mono, length + lp), grid);
    detail = "monochromatic patterns at L and L + L_p, L_p = " + std::to_string(lp) + " km";
    return max_abs_diff(p0.values, p1.values);
  }));

  checks.push_back(run_check("compensation.recovery", 1e-6, [&](std::string& detail) {
    ExperimentConfig comp = cfg;
    comp.link.dcm_gdd_ps2 -= effective_gdd_ps2(cfg.link);
    const std::vector<double> grid = default_phase_grid();
    const Pattern p = pattern_scan(comp, grid);
    std::vector<double> ref;
    for (double dphi : grid) {
      const PhaseContext ctx = make_phase_context(comp, dphi);
      ref.push_back(compensated_probability(a, b, ctx.delta_phi_rad + ctx.beta1_delta_l_term_rad));
    }
    detail = "DCM set to cancel the link; pattern vs J_0(c)^2 on 241 points";
    return max_abs_diff(p.values, ref);
  }));

  return checks;
}

std::string validation_report_json(const std::vector<ValidationCheck>& checks) {
  nlohmann::json doc;
  doc["engine_version"] = kEngineVersion;
  doc["all_passed"] = std::all_of(checks.begin(), checks.end(),
                                  [](const ValidationCheck& c) { return c.passed; });
  doc["checks"] = nlohmann::json::array();
  for (const ValidationCheck& c : checks) {
    nlohmann::json entry = {{"name", c.name},
                            {"passed", c.passed},
                            {"threshold", c.threshold},
                            {"detail", c.detail}};
    entry["measured"] = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json();
    doc["checks"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

}  // namespace freqpath::cli
