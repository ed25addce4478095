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

// Brute-force two-photon state-vector simulation of the full chain
// (source -> fibers/DCM -> phase modulators -> conjugate bin filters). It shares
// no code path with the closed-form engine in interference.hpp beyond the Bessel
// kernel and the quadrature rule, and serves as its correctness oracle.
//
// The flat source is represented as a comb of anticorrelated teeth: for each
// band offset d_q, photon A sits at w0 + d_q + j Omega and photon B at
// w0 - d_q - j Omega, |j| <= T, each tooth with unit amplitude. After modulation
// several teeth land in the same filtered pair (n, -n) and interfere.

#include <span>
#include <vector>

#include "freqpath/config.hpp"
#include "freqpath/modulator.hpp"

namespace freqpath {

/// Dense amplitude tensor indexed by (bin of A, bin of B, band node).
class JointState {
 public:
  JointState(int half_a, int half_b, int source_half_width, std::vector<double> offsets,
             std::vector<double> weights);

  int half_width_a() const { return half_a_; }
  int half_width_b() const { return half_b_; }
  int source_half_width() const { return source_half_width_; }
  std::size_t node_count() const { return offsets_.size(); }

  /// Band offsets d_q (rad/ps) and quadrature weights; the weights sum to 1.
  std::span<const double> offsets() const { return offsets_; }
  std::span<const double> weights() const { return weights_; }

  Complex at(int k_a, int k_b, std::size_t q) const { return amps_[index(k_a, k_b, q)]; }
  Complex& at(int k_a, int k_b, std::size_t q) { return amps_[index(k_a, k_b, q)]; }

  bool contains(int k_a, int k_b) const {
    return k_a >= -half_a_ && k_a <= half_a_ && k_b >= -half_b_ && k_b <= half_b_;
  }

  /// Weighted norm per source tooth: sum_q w_q sum |amp|^2 / (2T + 1).
  double norm() const;

 private:
  std::size_t index(int k_a, int k_b, std::size_t q) const {
    const auto ia = static_cast<std::size_t>(k_a + half_a_);
    const auto ib = static_cast<std::size_t>(k_b + half_b_);
    return (ia * (2 * static_cast<std::size_t>(half_b_) + 1) + ib) * offsets_.size() + q;
  }

  int half_a_;
  int half_b_;
  int source_half_width_;
  std::vector<double> offsets_;
  std::vector<double> weights_;
  std::vector<Complex> amps_;
};

/// Source teeth needed so that every path feeding bin n is represented:
/// |n| + max kernel reach of the two modulators.
int oracle_source_half_width(const ExperimentConfig& cfg);

/// Pre-modulation state: unit amplitude on (j, -j) for |j| <= T at every band
/// node. Monochromatic filters give a single node at d = 0.
JointState build_epr_state(const ExperimentConfig& cfg);
JointState build_epr_state(const ExperimentConfig& cfg, int source_half_width);

/// Multiplies every amplitude by exp(i [beta(w_A)(L0 + L_A) + D_dcm w_A^2 / 2
/// + beta(w_B)(L0 + L_B)]) with beta(w) = beta1 w + beta2 w^2 / 2 per segment,
/// where w_A, w_B are the photons' detunings from w0.
JointState apply_link_dispersion(JointState state, const ExperimentConfig& cfg);

/// pm_kernel(drive_a) on the A index and pm_kernel(drive_b) on the B index.
/// Throws TruncationError if more than 1e-9 of the norm is lost.
JointState apply_modulators(const JointState& state, const ExperimentConfig& cfg);

/// sum_q w_q |amp(n, -n, q)|^2.
double coincidence_bruteforce(const JointState& state, const FilterSpec& filter);

/// Whole chain at scan position delta_phi (added to drive A's phase).
double oracle_probability(const ExperimentConfig& cfg, double delta_phi);

}  // namespace freqpath
