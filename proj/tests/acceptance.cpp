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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "freqpath/interference.hpp"
#include "freqpath/modulator.hpp"
#include "freqpath/oracle.hpp"
#include "freqpath/special_fn.hpp"
#include "freqpath/virtual_lab.hpp"

using namespace freqpath;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_budget_s;  // 0: no budget
  std::function<Outcome()> body;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

ExperimentConfig paper(double bandwidth_ghz, double beta2) {
  ExperimentConfig cfg = reference_config();
  cfg.filter.bandwidth_rad_per_ps = units::ghz_to_rad_per_ps(bandwidth_ghz);
  cfg.link.shared.beta2_ps2_per_km = beta2;
  cfg.link.arm_a.beta2_ps2_per_km = beta2;
  cfg.link.arm_b.beta2_ps2_per_km = beta2;
  return cfg;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

Outcome dispersion_free_invariance() {
  const ExperimentConfig cfg = paper(0.0, 0.0);
  const std::vector<double> grid = default_phase_grid();
  const std::vector<double> lengths{0.0, 15.0, 30.0, 60.0};
  const std::vector<Pattern> ps = distance_scan(cfg, lengths, grid);
  std::vector<double> closed;
  for (double x : grid) closed.push_back(compensated_probability(2.8, 2.6, x));
  double across = 0.0;
  double vs_closed = 0.0;
  for (const Pattern& p : ps) {
    across = std::max(across, max_abs_diff(p.values, ps.front().values));
    vs_closed = std::max(vs_closed, max_abs_diff(p.values, closed));
  }
  return {across < 1e-12 && vs_closed < 1e-12,
          "max |dP| across L = " + fmt("%.2e", across) + ", vs J0^2 = " + fmt("%.2e", vs_closed)};
}

Outcome dispersion_revival() {
  const ExperimentConfig cfg = paper(0.0, -22.0);
  const double lp = revival_length_km(-22.0, cfg.omega_rad_per_ps());
  const std::vector<double> grid = default_phase_grid();
  double worst = 0.0;
  for (double l : {0.0, 4.0, 30.0, 60.0}) {
    const std::vector<double> lengths{l, l + lp};
    const std::vector<Pattern> ps = distance_scan(cfg, lengths, grid);
    worst = std::max(worst, max_abs_diff(ps[0].values, ps[1].values));
  }
  return {worst < 1e-10, "L_p = " + fmt("%.6f", lp) + " km, max |P(L) - P(L+L_p)| = " + fmt("%.2e", worst)};
}

Outcome irreversible_degradation() {
  const ExperimentConfig cfg = paper(3.0, -22.0);
  const std::vector<double> lengths = linspace(0.0, 60.0, 241);
  const std::vector<Pattern> ps = distance_scan(cfg, lengths, default_phase_grid());
  const double v0 = visibility(ps.front());
  const double v60 = visibility(ps.back());
  std::size_t first_drop = ps.size();
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (visibility(ps[i]) < 0.99 * v0) {
      first_drop = i;
      break;
    }
  }
  double best_after = 0.0;
  for (std::size_t i = first_drop; i < ps.size(); ++i) best_after = std::max(best_after, visibility(ps[i]));
  const bool ok = v60 < v0 && first_drop < ps.size() && best_after < 0.99 * v0;
  std::string detail = "V(0) = " + fmt("%.5f", v0) + ", V(60) = " + fmt("%.5f", v60);
  if (first_drop < ps.size()) {
    detail += ", below 0.99 V(0) from L = " + fmt("%.2f", lengths[first_drop]) +
              " km, max V after = " + fmt("%.5f", best_after);
  }
  return {ok, detail};
}

Outcome compensated_recovery() {
  const std::vector<double> grid = default_phase_grid();
  ExperimentConfig split = paper(3.0, -22.0);
  split.link.arm_a.length_km = 2.0;
  split.link.arm_b.length_km = 2.0;
  split.link.dcm_gdd_ps2 = 88.0;
  ExperimentConfig short_shared = paper(3.0, -22.0);
  short_shared.link.shared.length_km = 2.0;
  short_shared.link.dcm_gdd_ps2 = 88.0;
  ExperimentConfig long_shared = paper(3.0, -22.0);
  long_shared.link.shared.length_km = 30.0;
  long_shared.link.dcm_gdd_ps2 = 1320.0;
  double worst = 0.0;
  for (const ExperimentConfig& cfg : {split, short_shared, long_shared}) {
    const Pattern p = pattern_scan(cfg, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(p.values[i] - compensated_probability(2.8, 2.6, grid[i])));
    }
  }
  return {worst < 1e-6, "3 scenarios x 241 points, max |P - J0^2(c)| = " + fmt("%.2e", worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double beta2 = -22.0;
  const int configs = 24;
  double worst = 0.0;
  for (int i = 0; i < configs; ++i) {
    ExperimentConfig cfg = paper(i % 2 == 0 ? 0.0 : 3.0, beta2);
    const double omega = cfg.omega_rad_per_ps();
    cfg.drive_a = RfDrive::make(3.0 * u(rng), 0.0, omega);
    cfg.drive_b = RfDrive::make(3.0 * u(rng), 0.0, omega);
    cfg.filter.bin_index_n = i % 5 - 2;
    const double total = 60.0 * u(rng);
    cfg.link.shared.length_km = total / 2.0;
    cfg.link.dcm_gdd_ps2 = (i % 3 == 0) ? -beta2 * total : 0.0;
    const double dphi = 2.0 * kPi * (u(rng) - 0.5);
    const double closed = coincidence_probability(cfg, dphi);
    const double brute = oracle_probability(cfg, dphi);
    worst = std::max(worst, std::abs(brute - closed) / std::max(std::abs(closed), 1e-300));
  }
  return {worst < 1e-8, std::to_string(configs) + " configs, max relative difference = " + fmt("%.2e", worst)};
}

Outcome path_count() {
  const int n = effective_path_count(3.0, 1e-3);
  return {n == 9, "effective_path_count(3.0, 1e-3) = " + std::to_string(n) + ", expected 9"};
}

Outcome closure_and_unitarity() {
  double closure = 0.0;
  for (int i = 0; i <= 500; ++i) closure = std::max(closure, BesselRow(5.0 * i / 500.0, 40).closure_defect());
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double drift = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    BinAmplitudes x(5);
    for (int k = -5; k <= 5; ++k) x[k] = {g(rng), g(rng)};
    const double scale = 1.0 / std::sqrt(x.norm2());
    for (int k = -5; k <= 5; ++k) x[k] *= scale;
    const RfDrive d = RfDrive::make(5.0 * u(rng), 2.0 * kPi * u(rng), units::ghz_to_rad_per_ps(12.5));
    drift = std::max(drift, std::abs(apply_pm(x, d, 60).norm2() - 1.0));
  }
  return {closure < 1e-12 && drift < 1e-10,
          "max closure defect (s <= 5) = " + fmt("%.2e", closure) + ", max norm drift = " + fmt("%.2e", drift)};
}

Outcome thermal_sensitivity() {
  const double drift = thermal_phase_drift(1.0, 1.0);
  ExperimentConfig cfg = paper(3.0, -22.0);
  cfg.link.shared.length_km = 30.0;
  cfg.link.dcm_gdd_ps2 = 1320.0;
  const std::vector<double> grid = default_phase_grid();
  const Pattern base = pattern_scan(cfg, grid);
  const Pattern shifted = pattern_scan(cfg, grid, drift);
  const double diff = max_abs_diff(base.values, shifted.values);
  return {drift == 2.0 * kPi && diff < 1e-12,
          "drift(1 K, 1 km) = " + fmt("%.17g", drift) + " rad, max pattern change = " + fmt("%.2e", diff)};
}

Outcome virtual_experiment() {
  ExperimentConfig cfg = paper(3.0, -22.0);
  cfg.link.shared.length_km = 30.0;
  cfg.link.dcm_gdd_ps2 = 1320.0;
  const Pattern probabilities = pattern_scan(cfg, default_phase_grid());
  int covered = 0;
  double worst_pull = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Pattern counts = simulate_counts(probabilities, {1e4, 0.0, 1.0, seed});
    const double sign = seed % 2 == 0 ? 1.0 : -1.0;
    const FitParams init{1e4 * (1.0 + 0.1 * sign), 2.8 * (1.0 + 0.1 * sign), 2.6 * (1.0 - 0.1 * sign),
                         0.05 * sign, 0.0};
    const FitResult r = fit_bessel_pattern(counts, init);
    const auto se = r.standard_errors();
    const double pull = std::max(std::abs(r.params.a - 2.8) / se[1], std::abs(r.params.b - 2.6) / se[2]);
    worst_pull = std::max(worst_pull, pull);
    if (r.converged && pull <= 3.0) ++covered;
  }
  return {covered >= 18, std::to_string(covered) + "/20 seeds within 3 sigma, largest pull = " +
                             fmt("%.2f", worst_pull)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "dispersion-free invariance", 1.0, dispersion_free_invariance},
      {2, "dispersion revival", 1.0, dispersion_revival},
      {3, "irreversible degradation", 0.0, irreversible_degradation},
      {4, "compensated recovery", 5.0, compensated_recovery},
      {5, "oracle equivalence", 60.0, oracle_equivalence},
      {6, "path count", 1.0, path_count},
      {7, "closure and unitarity", 1.0, closure_and_unitarity},
      {8, "thermal sensitivity", 0.0, thermal_sensitivity},
      {9, "end-to-end virtual experiment", 60.0, virtual_experiment},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_budget_s > 0.0 && secs > c.time_budget_s) {
      o.passed = false;
      o.detail += " (over time budget " + fmt("%.0f", c.time_budget_s) + " s)";
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %d: %s: %s [%.3f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
