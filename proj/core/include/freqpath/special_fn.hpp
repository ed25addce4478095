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

// Integer-order Bessel functions of the first kind, J_k(x), for the sideband
// amplitudes of a sinusoidally driven phase modulator.

#include <span>
#include <vector>

namespace freqpath {

/// Default probability budget for effective_path_count.
inline constexpr double kDefaultPathEpsilon = 1e-3;

/// J_order(x). Accurate to ~1e-14 absolute for |x| <= 50; |order| <= 1e4.
double bessel_j(int order, double x);

/// J_k(s) for k in [-k_max, k_max], computed in one downward (Miller) sweep.
/// The negative half is filled by reflection, J_{-k} = (-1)^k J_k, so the
/// symmetry holds exactly.
class BesselRow {
 public:
  BesselRow(double s, int k_max);

  double argument() const { return s_; }
  int k_max() const { return k_max_; }

  /// J_k(s), |k| <= k_max.
  double operator[](int k) const { return values_[static_cast<std::size_t>(k + k_max_)]; }

  /// Values ordered from k = -k_max to k = +k_max.
  std::span<const double> values() const { return values_; }

  /// 1 - sum_k J_k(s)^2 over the stored range.
  double closure_defect() const;

 private:
  double s_;
  int k_max_;
  std::vector<double> values_;
};

BesselRow bessel_row(double s, int k_max);

/// Upper bound on sum_{|k| > k_max} J_k(s)^2 from |J_k(s)| <= (s/2)^k / k!.
double bessel_tail_bound(int k_max, double s);

/// Smallest odd N = 2M + 1 such that sum_{|k| <= M} J_k(s)^2 >= 1 - epsilon.
int effective_path_count(double s, double epsilon = kDefaultPathEpsilon);

}  // namespace freqpath
