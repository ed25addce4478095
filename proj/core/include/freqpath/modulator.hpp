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

// Single-photon frequency-bin transform of a sinusoidally driven phase
// modulator: |n> -> sum_k J_k(s) e^{i k phi} |n + k>, with |n> = |w0 + n Omega>.

#include <complex>
#include <span>
#include <vector>

#include "freqpath/config.hpp"

namespace freqpath {

using Complex = std::complex<double>;

/// Lost norm tolerated when truncating a modulator kernel or widened state.
inline constexpr double kMaxLostNorm = 1e-10;

/// Complex amplitudes over bin indices k in [-K, K].
class BinAmplitudes {
 public:
  BinAmplitudes() : BinAmplitudes(0) {}
  explicit BinAmplitudes(int half_width);
  BinAmplitudes(int half_width, std::vector<Complex> amps);

  /// |0>: amplitude 1 at k = 0.
  static BinAmplitudes vacuum_bin(int half_width = 0);

  int half_width() const { return half_width_; }
  bool contains(int k) const { return k >= -half_width_ && k <= half_width_; }

  Complex operator[](int k) const { return amps_[index(k)]; }
  Complex& operator[](int k) { return amps_[index(k)]; }

  /// Amplitude at k, zero outside the stored range.
  Complex at_or_zero(int k) const { return contains(k) ? (*this)[k] : Complex{}; }

  std::span<const Complex> amplitudes() const { return amps_; }

  double norm2() const;

 private:
  std::size_t index(int k) const { return static_cast<std::size_t>(k + half_width_); }

  int half_width_;
  std::vector<Complex> amps_;
};

/// Sidebands per side kept by apply_pm and the oracle: the smallest M with
/// sum_{|k|>M} J_k(s)^2 <= 1e-32 by bessel_tail_bound.
int kernel_half_width(double s);

/// Column of the modulator transform: amps[k] = J_k(s) e^{i k phi}, |k| <= k_max.
/// Throws TruncationError when k_max cannot hold the kernel.
BinAmplitudes pm_kernel(const RfDrive& drive, int k_max);

/// Discrete convolution of `state` with the kernel of `drive`. The output range
/// is widened by kernel_half_width(s); it may not exceed `k_limit` (throws
/// TruncationError, "increase k_max") and may not lose more than kMaxLostNorm.
BinAmplitudes apply_pm(const BinAmplitudes& state, const RfDrive& drive, int k_limit);

}  // namespace freqpath
