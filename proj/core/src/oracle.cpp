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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

#include "freqpath/errors.hpp"
#include "freqpath/quadrature.hpp"

namespace freqpath {

JointState::JointState(int half_a, int half_b, int source_half_width,
                       std::vector<double> offsets, std::vector<double> weights)
    : half_a_(half_a),
      half_b_(half_b),
      source_half_width_(source_half_width),
      offsets_(std::move(offsets)),
      weights_(std::move(weights)) {
  if (half_a < 0 || half_b < 0 || source_half_width < 0 || offsets_.empty() ||
      offsets_.size() != weights_.size()) {
    throw std::invalid_argument("JointState: inconsistent dimensions");
  }
  amps_.assign((2 * static_cast<std::size_t>(half_a) + 1) *
                   (2 * static_cast<std::size_t>(half_b) + 1) * offsets_.size(),
               Complex{});
}

double JointState::norm() const {
  double total = 0.0;
  for (int ka = -half_a_; ka <= half_a_; ++ka) {
    for (int kb = -half_b_; kb <= half_b_; ++kb) {
      for (std::size_t q = 0; q < offsets_.size(); ++q) {
        total += weights_[q] * std::norm(at(ka, kb, q));
      }
    }
  }
  return total / (2.0 * source_half_width_ + 1.0);
}

int oracle_source_half_width(const ExperimentConfig& cfg) {
  return std::abs(cfg.filter.bin_index_n) +
         std::max(kernel_half_width(cfg.drive_a.amplitude_s()),
                  kernel_half_width(cfg.drive_b.amplitude_s()));
}

JointState build_epr_state(const ExperimentConfig& cfg) {
  return build_epr_state(cfg, oracle_source_half_width(cfg));
}

JointState build_epr_state(const ExperimentConfig& cfg, int source_half_width) {
  std::vector<double> offsets{0.0};
  std::vector<double> weights{1.0};
  const double band = cfg.filter.bandwidth_rad_per_ps;
  if (band > 0.0) {
    if (cfg.solver.quad_nodes < 3) throw SolverError("oracle: quad_nodes must be >= 3");
    QuadratureRule rule = gauss_legendre(cfg.solver.quad_nodes, -band / 2.0, band / 2.0);
    for (double& w : rule.weights) w /= band;
    offsets = std::move(rule.nodes);
    weights = std::move(rule.weights);
  }
  const int t = source_half_width;
  JointState state(t, t, t, std::move(offsets), std::move(weights));
  for (int j = -t; j <= t; ++j) {
    for (std::size_t q = 0; q < state.node_count(); ++q) state.at(j, -j, q) = 1.0;
  }
  return state;
}

JointState apply_link_dispersion(JointState state, const ExperimentConfig& cfg) {
  const LinkTopology& link = cfg.link;
  const double omega = cfg.omega_rad_per_ps();
  for (int ka = -state.half_width_a(); ka <= state.half_width_a(); ++ka) {
    for (int kb = -state.half_width_b(); kb <= state.half_width_b(); ++kb) {
      for (std::size_t q = 0; q < state.node_count(); ++q) {
        Complex& amp = state.at(ka, kb, q);
        if (amp == Complex{}) continue;
        const double d = state.offsets()[q];
        const double w_a = d + ka * omega;
        const double w_b = -d + kb * omega;
        // Linear (group delay) and quadratic (GVD) parts, per segment, both photons.
        const double shared = link.shared.length_km *
                              (link.shared.beta1_ps_per_km * (w_a + w_b) +
                               link.shared.beta2_ps2_per_km * (w_a * w_a + w_b * w_b) / 2.0);
        const double arm_a = link.arm_a.length_km * (link.arm_a.beta1_ps_per_km * w_a +
                                                     link.arm_a.beta2_ps2_per_km * w_a * w_a / 2.0);
        const double arm_b = link.arm_b.length_km * (link.arm_b.beta1_ps_per_km * w_b +
                                                     link.arm_b.beta2_ps2_per_km * w_b * w_b / 2.0);
        const double dcm = link.dcm_gdd_ps2 * w_a * w_a / 2.0;
        amp *= std::polar(1.0, shared + arm_a + arm_b + dcm);
      }
    }
  }
  return state;
}

JointState apply_modulators(const JointState& state, const ExperimentConfig& cfg) {
  const int reach_a = kernel_half_width(cfg.drive_a.amplitude_s());
  const int reach_b = kernel_half_width(cfg.drive_b.amplitude_s());
  const BinAmplitudes kernel_a = pm_kernel(cfg.drive_a, reach_a);
  const BinAmplitudes kernel_b = pm_kernel(cfg.drive_b, reach_b);
  const std::size_t nodes = state.node_count();
  const std::vector<double> offsets(state.offsets().begin(), state.offsets().end());
  const std::vector<double> weights(state.weights().begin(), state.weights().end());

  // Photon A.
  JointState mid(state.half_width_a() + reach_a, state.half_width_b(),
                 state.source_half_width(), offsets, weights);
  for (int ka = -state.half_width_a(); ka <= state.half_width_a(); ++ka) {
    for (int kb = -state.half_width_b(); kb <= state.half_width_b(); ++kb) {
      for (std::size_t q = 0; q < nodes; ++q) {
        const Complex in = state.at(ka, kb, q);
        if (in == Complex{}) continue;
        for (int s = -reach_a; s <= reach_a; ++s) mid.at(ka + s, kb, q) += kernel_a[s] * in;
      }
    }
  }

  // Photon B.
  JointState out(mid.half_width_a(), mid.half_width_b() + reach_b, state.source_half_width(),
                 offsets, weights);
  for (int ka = -mid.half_width_a(); ka <= mid.half_width_a(); ++ka) {
    for (int kb = -mid.half_width_b(); kb <= mid.half_width_b(); ++kb) {
      for (std::size_t q = 0; q < nodes; ++q) {
        const Complex in = mid.at(ka, kb, q);
        if (in == Complex{}) continue;
        for (int s = -reach_b; s <= reach_b; ++s) out.at(ka, kb + s, q) += kernel_b[s] * in;
      }
    }
  }

  const double lost = state.norm() - out.norm();
  if (lost > 1e-9) {
    std::ostringstream msg;
    msg << "oracle: modulators lost norm " << lost;
    throw TruncationError(msg.str());
  }
  return out;
}

double coincidence_bruteforce(const JointState& state, const FilterSpec& filter) {
  const int n = filter.bin_index_n;
  if (!state.contains(n, -n)) return 0.0;
  double p = 0.0;
  for (std::size_t q = 0; q < state.node_count(); ++q) {
    p += state.weights()[q] * std::norm(state.at(n, -n, q));
  }
  return p;
}

double oracle_probability(const ExperimentConfig& cfg, double delta_phi) {
  ExperimentConfig shifted = cfg;
  shifted.drive_a = cfg.drive_a.with_phase(cfg.drive_a.phase_rad() + delta_phi);
  JointState state = build_epr_state(shifted);
  state = apply_link_dispersion(std::move(state), shifted);
  state = apply_modulators(state, shifted);
  return coincidence_bruteforce(state, shifted.filter);
}

}  // namespace freqpath
