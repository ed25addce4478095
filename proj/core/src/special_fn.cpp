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

#include "freqpath/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace freqpath {

namespace {

constexpr double kRescaleThreshold = 1e250;

// J_0(x) .. J_n(x) for x > 0 via Miller's downward recurrence, normalised with
// J_0 + 2 sum_{m>=1} J_{2m} = 1.
std::vector<double> miller_sweep(double x, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  const double top = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(top + 30.0 + std::sqrt(60.0 * top));
  start += start % 2;  // even, so the normalisation sum closes on J_0

  const double two_over_x = 2.0 / x;
  double j_next = 0.0;  // J_{k+1}
  double j_cur = 1e-300;  // J_k, arbitrary seed
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double j_prev = k * two_over_x * j_cur - j_next;  // J_{k-1}
    j_next = j_cur;
    j_cur = j_prev;
    if (k - 1 <= n) out[static_cast<std::size_t>(k - 1)] = j_cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j_cur;
    if (std::abs(j_cur) > kRescaleThreshold) {
      j_cur /= kRescaleThreshold;
      j_next /= kRescaleThreshold;
      norm /= kRescaleThreshold;
      for (int i = k - 1; i <= n; ++i) out[static_cast<std::size_t>(i)] /= kRescaleThreshold;
    }
  }
  norm += j_cur;  // J_0
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace

double bessel_j(int order, double x) {
  const int n = std::abs(order);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double value = miller_sweep(std::abs(x), n)[static_cast<std::size_t>(n)];
  // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
  const bool negate = (n % 2 == 1) && ((order < 0) != (x < 0.0));
  return negate ? -value : value;
}

BesselRow::BesselRow(double s, int k_max) : s_(s), k_max_(k_max) {
  if (k_max < 0) throw std::invalid_argument("BesselRow: k_max must be >= 0");
  values_.assign(2 * static_cast<std::size_t>(k_max) + 1, 0.0);
  if (s == 0.0) {
    values_[static_cast<std::size_t>(k_max)] = 1.0;
    return;
  }
  const std::vector<double> pos = miller_sweep(std::abs(s), k_max);
  for (int k = 0; k <= k_max; ++k) {
    double v = pos[static_cast<std::size_t>(k)];
    if (s < 0.0 && k % 2 == 1) v = -v;
    values_[static_cast<std::size_t>(k_max + k)] = v;
    values_[static_cast<std::size_t>(k_max - k)] = (k % 2 == 1) ? -v : v;
  }
}

double BesselRow::closure_defect() const {
  // Accumulate from the small tail inwards.
  double sum = 0.0;
  for (int k = k_max_; k >= 1; --k) {
    const double v = (*this)[k];
    sum += 2.0 * v * v;
  }
  const double j0 = (*this)[0];
  return (1.0 - j0 * j0) - sum;
}

BesselRow bessel_row(double s, int k_max) { return BesselRow(s, k_max); }

double bessel_tail_bound(int k_max, double s) {
  const double half = std::abs(s) / 2.0;
  if (half == 0.0) return 0.0;
  // t = (s/2)^(K+1) / (K+1)!, evaluated in logs.
  const int k = k_max + 1;
  const double log_t = k * std::log(half) - std::lgamma(k + 1.0);
  const double t2 = std::exp(2.0 * log_t);
  const double ratio = (half / (k + 1.0)) * (half / (k + 1.0));
  if (ratio >= 1.0) return 1.0;
  return std::min(1.0, 2.0 * t2 / (1.0 - ratio));
}

int effective_path_count(double s, double epsilon) {
  if (s < 0.0) throw std::invalid_argument("effective_path_count: s must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("effective_path_count: epsilon must be in (0, 1)");
  }
  const int k_max = static_cast<int>(std::ceil(s)) + 40;
  const BesselRow row(s, k_max);
  double cumulative = row[0] * row[0];
  int m = 0;
  while (cumulative < 1.0 - epsilon && m < k_max) {
    ++m;
    cumulative += 2.0 * row[m] * row[m];
  }
  return 2 * m + 1;
}

}  // namespace freqpath
