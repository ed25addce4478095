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

#include "freqpath/modulator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "freqpath/errors.hpp"
#include "freqpath/special_fn.hpp"

namespace freqpath {

BinAmplitudes::BinAmplitudes(int half_width)
    : half_width_(half_width), amps_(2 * static_cast<std::size_t>(half_width) + 1) {
  if (half_width < 0) throw std::invalid_argument("BinAmplitudes: negative half width");
}

BinAmplitudes::BinAmplitudes(int half_width, std::vector<Complex> amps)
    : half_width_(half_width), amps_(std::move(amps)) {
  if (half_width < 0 || amps_.size() != 2 * static_cast<std::size_t>(half_width) + 1) {
    throw std::invalid_argument("BinAmplitudes: size does not match half width");
  }
}

BinAmplitudes BinAmplitudes::vacuum_bin(int half_width) {
  BinAmplitudes b(half_width);
  b[0] = 1.0;
  return b;
}

double BinAmplitudes::norm2() const {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return sum;
}

int kernel_half_width(double s) {
  // Cut where the sideband amplitudes reach double precision.
  int m = 0;
  while (bessel_tail_bound(m, s) > 1e-32) ++m;
  return m;
}

BinAmplitudes pm_kernel(const RfDrive& drive, int k_max) {
  const double s = drive.amplitude_s();
  const int needed = effective_path_count(s, 1e-6) / 2;
  if (k_max < needed) {
    throw TruncationError("pm_kernel: k_max=" + std::to_string(k_max) + " below " +
                          std::to_string(needed) + " required for s=" + std::to_string(s) +
                          "; increase k_max");
  }
  const BesselRow row(s, k_max);
  BinAmplitudes kernel(k_max);
  for (int k = -k_max; k <= k_max; ++k) {
    kernel[k] = row[k] * std::polar(1.0, k * drive.phase_rad());
  }
  if (kernel.norm2() < 1.0 - kMaxLostNorm) {
    throw TruncationError("pm_kernel: truncated kernel loses more than 1e-10 of the norm; "
                          "increase k_max");
  }
  return kernel;
}

BinAmplitudes apply_pm(const BinAmplitudes& state, const RfDrive& drive, int k_limit) {
  const int reach = kernel_half_width(drive.amplitude_s());
  const int out_half = state.half_width() + reach;
  if (out_half > k_limit) {
    throw TruncationError("apply_pm: widened bin range " + std::to_string(out_half) +
                          " exceeds k_max=" + std::to_string(k_limit) + "; increase k_max");
  }
  const BinAmplitudes kernel = pm_kernel(drive, reach);

  BinAmplitudes out(out_half);
  for (int n = -state.half_width(); n <= state.half_width(); ++n) {
    const Complex in = state[n];
    if (in == Complex{}) continue;
    for (int k = -reach; k <= reach; ++k) out[n + k] += in * kernel[k];
  }

  const double lost = state.norm2() - out.norm2();
  if (lost > kMaxLostNorm) {
    std::ostringstream msg;
    msg << "apply_pm: lost norm " << lost << " exceeds 1e-10; increase k_max";
    throw TruncationError(msg.str());
  }
  return out;
}

}  // namespace freqpath
