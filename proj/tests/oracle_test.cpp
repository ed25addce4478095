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

#include "freqpath/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "freqpath/errors.hpp"
#include "freqpath/interference.hpp"
#include "support/bessel_series.hpp"

using namespace freqpath;
using freqpath::testing::bessel_j_series;

namespace {

ExperimentConfig with_drives(double a, double b, double bandwidth_ghz = 3.0) {
  ExperimentConfig cfg = reference_config();
  const double omega = cfg.omega_rad_per_ps();
  cfg.drive_a = RfDrive::make(a, 0.0, omega);
  cfg.drive_b = RfDrive::make(b, 0.0, omega);
  cfg.filter.bandwidth_rad_per_ps = units::ghz_to_rad_per_ps(bandwidth_ghz);
  return cfg;
}

}  // namespace

TEST(EprState, monochromatic_has_single_node) {
  const JointState s = build_epr_state(with_drives(2.8, 2.6, 0.0));
  ASSERT_EQ(s.node_count(), 1u);
  EXPECT_EQ(s.offsets()[0], 0.0);
  EXPECT_EQ(s.at(0, 0, 0), Complex(1.0, 0.0));
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(EprState, band_is_normalized) {
  const JointState s = build_epr_state(with_drives(2.8, 2.6));
  EXPECT_EQ(s.node_count(), 33u);
  EXPECT_NEAR(s.norm(), 1.0, 1e-9);
  const double half_band = units::ghz_to_rad_per_ps(1.5);
  for (double d : s.offsets()) EXPECT_LE(std::abs(d), half_band);
}

TEST(EprState, anticorrelated_before_modulation) {
  const JointState s = build_epr_state(with_drives(2.8, 2.6));
  for (int ka = -s.half_width_a(); ka <= s.half_width_a(); ++ka) {
    for (int kb = -s.half_width_b(); kb <= s.half_width_b(); ++kb) {
      if (ka == -kb) continue;
      for (std::size_t q = 0; q < s.node_count(); ++q) EXPECT_EQ(s.at(ka, kb, q), Complex{});
    }
  }
}

TEST(EprState, too_few_nodes_rejected) {
  ExperimentConfig cfg = with_drives(2.8, 2.6);
  cfg.solver.quad_nodes = 2;
  EXPECT_THROW(build_epr_state(cfg), SolverError);
}

TEST(LinkDispersion, zero_link_leaves_state_unchanged) {
  const ExperimentConfig cfg = with_drives(2.8, 2.6);
  const JointState s = build_epr_state(cfg);
  const JointState t = apply_link_dispersion(s, cfg);
  for (int j = -s.source_half_width(); j <= s.source_half_width(); ++j) {
    for (std::size_t q = 0; q < s.node_count(); ++q) EXPECT_EQ(t.at(j, -j, q), s.at(j, -j, q));
  }
}

TEST(LinkDispersion, preserves_modulus) {
  ExperimentConfig cfg = with_drives(2.8, 2.6);
  cfg.link.shared.length_km = 17.0;
  cfg.link.arm_a.length_km = 1.3;
  cfg.link.dcm_gdd_ps2 = 200.0;
  const JointState s = apply_link_dispersion(build_epr_state(cfg), cfg);
  for (int j = -s.source_half_width(); j <= s.source_half_width(); ++j) {
    for (std::size_t q = 0; q < s.node_count(); ++q) EXPECT_NEAR(std::abs(s.at(j, -j, q)), 1.0, 1e-12);
  }
}

TEST(Modulators, unmodulated_state_unchanged) {
  const ExperimentConfig cfg = with_drives(0.0, 0.0);
  const JointState s = build_epr_state(cfg);
  const JointState t = apply_modulators(s, cfg);
  for (int j = -s.source_half_width(); j <= s.source_half_width(); ++j) {
    for (std::size_t q = 0; q < s.node_count(); ++q) {
      EXPECT_NEAR(std::abs(t.at(j, -j, q) - s.at(j, -j, q)), 0.0, 1e-15);
    }
  }
}

TEST(Modulators, preserve_norm) {
  const ExperimentConfig cfg = with_drives(2.8, 2.6);
  const JointState s = build_epr_state(cfg);
  EXPECT_NEAR(apply_modulators(s, cfg).norm(), s.norm(), 1e-9);
}

TEST(Modulators, marginal_of_a_is_bessel_squared) {
  const double a = 2.8;
  const ExperimentConfig cfg = with_drives(a, 0.0, 0.0);
  const JointState s = apply_modulators(build_epr_state(cfg, 0), cfg);
  for (int k = -8; k <= 8; ++k) {
    double marginal = 0.0;
    for (int kb = -s.half_width_b(); kb <= s.half_width_b(); ++kb) marginal += std::norm(s.at(k, kb, 0));
    const double j = bessel_j_series(k, a);
    EXPECT_NEAR(marginal, j * j, 1e-9) << "k=" << k;
  }
}

TEST(Bruteforce, unmodulated_gives_unit_probability_for_every_bin) {
  for (int n : {0, 1, -2}) {
    ExperimentConfig cfg = with_drives(0.0, 0.0);
    cfg.filter.bin_index_n = n;
    cfg.link.shared.length_km = 25.0;
    EXPECT_NEAR(oracle_probability(cfg, 0.3), 1.0, 1e-12) << "n=" << n;
  }
}

TEST(Bruteforce, compensated_link_matches_bessel_pattern) {
  ExperimentConfig cfg = with_drives(2.8, 2.6, 0.0);
  cfg.link.shared.length_km = 30.0;
  cfg.link.dcm_gdd_ps2 = 1320.0;
  for (int i = 0; i <= 16; ++i) {
    const double dphi = -std::numbers::pi + 2.0 * std::numbers::pi * i / 16.0;
    const double c = std::sqrt(2.8 * 2.8 + 2.6 * 2.6 + 2.0 * 2.8 * 2.6 * std::cos(dphi));
    const double j0 = bessel_j_series(0, c);
    EXPECT_NEAR(oracle_probability(cfg, dphi), j0 * j0, 1e-8) << "dphi=" << dphi;
  }
}

TEST(Bruteforce, group_delay_only_link_changes_nothing) {
  ExperimentConfig base = with_drives(2.8, 2.6);
  base.link.shared.beta2_ps2_per_km = 0.0;
  base.link.arm_a.beta2_ps2_per_km = 0.0;
  base.link.arm_b.beta2_ps2_per_km = 0.0;
  ExperimentConfig linked = base;
  linked.link.shared.length_km = 40.0;
  linked.link.arm_a.length_km = 3.0;
  linked.link.arm_b.length_km = 3.0;
  for (int n : {0, 1}) {
    base.filter.bin_index_n = linked.filter.bin_index_n = n;
    for (double dphi : {-2.0, 0.0, 0.7, 3.0}) {
      EXPECT_NEAR(oracle_probability(linked, dphi), oracle_probability(base, dphi), 1e-10);
    }
  }
}

TEST(Bruteforce, agrees_with_closed_form_on_random_configs) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double beta2 = -22.0;
  for (int i = 0; i < 24; ++i) {
    ExperimentConfig cfg = with_drives(3.0 * u(rng), 3.0 * u(rng), (i % 2 == 0) ? 0.0 : 3.0);
    cfg.filter.bin_index_n = static_cast<int>(i % 5) - 2;
    const double total = 60.0 * u(rng);
    cfg.link.shared = {total / 2.0, units::kDefaultBeta1PsPerKm, beta2};
    cfg.link.arm_a.beta2_ps2_per_km = beta2;
    cfg.link.arm_b.beta2_ps2_per_km = beta2;
    cfg.link.dcm_gdd_ps2 = (i % 3 == 0) ? -beta2 * total : 0.0;
    const double dphi = 2.0 * std::numbers::pi * (u(rng) - 0.5);
    const double closed = coincidence_probability(cfg, dphi);
    const double brute = oracle_probability(cfg, dphi);
    EXPECT_NEAR(brute, closed, 1e-8 * std::max(closed, 1e-300)) << "config " << i;
  }
}

TEST(Bruteforce, agrees_with_closed_form_with_arm_mismatch) {
  ExperimentConfig cfg = with_drives(2.8, 2.6);
  cfg.link.shared.length_km = 10.0;
  cfg.link.arm_a.length_km = 1.0e-6;
  cfg.link.arm_b.length_km = 0.4;
  cfg.filter.bin_index_n = 1;
  for (double dphi : {-1.0, 0.5, 2.5}) {
    const double closed = coincidence_probability(cfg, dphi);
    EXPECT_NEAR(oracle_probability(cfg, dphi), closed, 1e-8 * closed);
  }
}
