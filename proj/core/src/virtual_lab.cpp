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

#include "freqpath/virtual_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "freqpath/errors.hpp"
#include "freqpath/special_fn.hpp"

namespace freqpath {

void validate(const CountingPlan& plan) {
  if (!(plan.pair_rate_per_s >= 0.0) || !(plan.accidental_rate_per_s >= 0.0)) {
    throw std::invalid_argument("CountingPlan: rates must be >= 0");
  }
  if (!(plan.dwell_s > 0.0) || !std::isfinite(plan.dwell_s)) {
    throw std::invalid_argument("CountingPlan: dwell_s must be > 0");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t point_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + index);
}

Pattern simulate_counts(const Pattern& probabilities, const CountingPlan& plan) {
  validate(plan);
  if (probabilities.meta.kind != PatternKind::kProbability) {
    throw std::invalid_argument("simulate_counts: input must be a probability pattern");
  }
  Pattern out;
  out.delta_phi_grid = probabilities.delta_phi_grid;
  out.values.resize(probabilities.values.size());
  out.meta = probabilities.meta;
  out.meta.kind = PatternKind::kCounts;
  out.meta.counting = CountingRecord{plan.pair_rate_per_s, plan.accidental_rate_per_s,
                                     plan.dwell_s, plan.seed};

  for (std::size_t i = 0; i < probabilities.values.size(); ++i) {
    const double mean =
        (plan.pair_rate_per_s * probabilities.values[i] + plan.accidental_rate_per_s) *
        plan.dwell_s;
    if (!(mean > 0.0)) {
      out.values[i] = 0.0;
      continue;
    }
    std::mt19937_64 rng(point_stream_seed(plan.seed, i));
    std::poisson_distribution<long long> poisson(mean);
    out.values[i] = static_cast<double>(poisson(rng));
  }
  return out;
}

double visibility(std::span<const double> values) {
  if (values.empty()) throw DataError("visibility: empty pattern");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi + *lo == 0.0) throw DataError("visibility: all-zero pattern");
  return (*hi - *lo) / (*hi + *lo);
}

double visibility(const Pattern& pattern) { return visibility(pattern.values); }

std::array<double, kFitParamCount> FitResult::standard_errors() const {
  std::array<double, kFitParamCount> out{};
  for (int i = 0; i < kFitParamCount; ++i) out[static_cast<std::size_t>(i)] = std::sqrt(covariance(i, i));
  return out;
}

namespace {

struct ModelTerms {
  double j0;
  double j1_over_c;  // J_1(c)/c, finite at c = 0
  double cos_t;
  double sin_t;
};

ModelTerms model_terms(const FitParams& p, double delta_phi) {
  const double t = delta_phi - p.phi0;
  const double cos_t = std::cos(t);
  const double c2 = p.a * p.a + p.b * p.b + 2.0 * p.a * p.b * cos_t;
  const double c = std::sqrt(std::max(0.0, c2));
  const double j0 = bessel_j(0, c);
  const double ratio = c > 1e-6 ? bessel_j(1, c) / c : 0.5 - c * c / 16.0;
  return {j0, ratio, cos_t, std::sin(t)};
}

}  // namespace

double bessel_model(const FitParams& p, double delta_phi) {
  const ModelTerms m = model_terms(p, delta_phi);
  return p.scale * m.j0 * m.j0 + p.background;
}

std::array<double, kFitParamCount> bessel_model_gradient(const FitParams& p, double delta_phi) {
  const ModelTerms m = model_terms(p, delta_phi);
  // d(J_0^2)/dc * dc/dp = -2 J_0 J_1 dc/dp = -2 J_0 (J_1/c) (c dc/dp)
  const double k = -2.0 * p.scale * m.j0 * m.j1_over_c;
  return {
      m.j0 * m.j0,
      k * (p.a + p.b * m.cos_t),
      k * (p.b + p.a * m.cos_t),
      k * (p.a * p.b * m.sin_t),
      1.0,
  };
}

std::vector<double> default_weights(std::span<const double> values) {
  std::vector<double> w(values.size());
  std::transform(values.begin(), values.end(), w.begin(),
                 [](double y) { return 1.0 / std::max(y, 1.0); });
  return w;
}

namespace {

using Vec5 = Eigen::Matrix<double, kFitParamCount, 1>;
using Mat5 = Eigen::Matrix<double, kFitParamCount, kFitParamCount>;

Vec5 to_vec(const FitParams& p) {
  const auto a = p.as_array();
  return Vec5(a.data());
}

FitParams from_vec(const Vec5& v) { return {v(0), v(1), v(2), v(3), v(4)}; }

double objective(const Pattern& data, std::span<const double> w, const FitParams& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    const double r = data.values[i] - bessel_model(p, data.delta_phi_grid[i]);
    s += w[i] * r * r;
  }
  return s;
}

void normal_equations(const Pattern& data, std::span<const double> w, const FitParams& p,
                      Mat5& h, Vec5& g) {
  h.setZero();
  g.setZero();
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    const double x = data.delta_phi_grid[i];
    const double r = data.values[i] - bessel_model(p, x);
    const auto grad = bessel_model_gradient(p, x);
    const Vec5 j(grad.data());
    h.noalias() += w[i] * j * j.transpose();
    g.noalias() += w[i] * r * j;
  }
}

// Maps (a, b, phi0) to the representative with a >= b >= 0 and phi0 in (-pi, pi],
// carrying the covariance along.
void canonicalise(FitParams& p, Mat5& cov) {
  Mat5 t = Mat5::Identity();
  if (p.a < 0.0) {
    p.a = -p.a;
    p.phi0 += std::numbers::pi;
    t(1, 1) = -1.0;
  }
  if (p.b < 0.0) {
    p.b = -p.b;
    p.phi0 += std::numbers::pi;
    t(2, 2) = -1.0;
  }
  if (p.a < p.b) {
    std::swap(p.a, p.b);
    t.row(1).swap(t.row(2));
  }
  p.phi0 = reduce_phase(p.phi0);
  cov = t * cov * t.transpose();
}

}  // namespace

FitResult fit_bessel_pattern(const Pattern& data, const FitParams& init,
                             std::span<const double> weights, const FitOptions& options) {
  const std::size_t n = data.values.size();
  if (n < 6 || data.delta_phi_grid.size() != n) {
    throw DataError("fit_bessel_pattern: need at least 6 data points");
  }
  if (std::all_of(data.values.begin(), data.values.end(),
                  [&](double v) { return v == data.values.front(); })) {
    throw DataError("fit_bessel_pattern: degenerate data (all values equal)");
  }
  for (double v : init.as_array()) {
    if (!std::isfinite(v)) throw std::invalid_argument("fit_bessel_pattern: non-finite init");
  }
  std::vector<double> w_default;
  if (weights.empty()) {
    w_default = default_weights(data.values);
    weights = w_default;
  }
  if (weights.size() != n) throw std::invalid_argument("fit_bessel_pattern: weight count");

  FitResult result;
  FitParams p = init;
  double s = objective(data, weights, p);
  result.objective_history.push_back(s);
  double lambda = 1e-3;
  Mat5 h;
  Vec5 g;

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    normal_equations(data, weights, p, h, g);
    if (g.cwiseAbs().maxCoeff() < options.gradient_tolerance) {
      result.converged = true;
      break;
    }
    bool accepted = false;
    while (!accepted) {
      Mat5 damped = h;
      for (int i = 0; i < kFitParamCount; ++i) {
        damped(i, i) += lambda * std::max(h(i, i), 1e-12);
      }
      const Vec5 step = damped.ldlt().solve(g);
      const FitParams trial = from_vec(to_vec(p) + step);
      const double s_trial = objective(data, weights, trial);
      if (std::isfinite(s_trial) && s_trial < s) {
        const double decrease = (s - s_trial) / std::max(s, 1e-300);
        p = trial;
        s = s_trial;
        result.objective_history.push_back(s);
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (decrease < options.relative_tolerance) result.converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e20) break;  // no descent direction left at machine precision
      }
    }
    if (!accepted) {
      result.converged = true;
      ++iter;
      break;
    }
    if (result.converged) {
      ++iter;
      break;
    }
  }
  result.iterations = iter;

  normal_equations(data, weights, p, h, g);
  Mat5 cov;
  Eigen::FullPivLU<Mat5> lu(h);
  if (lu.isInvertible()) {
    cov = lu.inverse();
  } else {
    cov.setConstant(std::numeric_limits<double>::quiet_NaN());
  }
  canonicalise(p, cov);
  result.params = p;
  result.covariance = cov;
  result.chi2_per_dof = s / static_cast<double>(n - kFitParamCount);
  return result;
}

}  // namespace freqpath
