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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freqpath/config.hpp"

namespace freqpath {

/// Engine identifier recorded in pattern metadata and run manifests.
inline constexpr const char* kEngineVersion = "freqpath-" FREQPATH_VERSION_STRING;

/// Probabilities are conditioned on the filter band and normalised so that
/// P = 1 for unmodulated photons at n = 0.
inline constexpr const char* kNormalizationTag = "band-conditioned:P(a=b=0,n=0)=1";

enum class PatternKind { kProbability, kCounts };

struct CountingRecord {
  double pair_rate_per_s = 0.0;
  double accidental_rate_per_s = 0.0;
  double dwell_s = 1.0;
  std::uint64_t seed = 0;
};

struct PatternMeta {
  ExperimentConfig config;
  std::string engine_version = kEngineVersion;
  std::string normalization = kNormalizationTag;
  PatternKind kind = PatternKind::kProbability;
  bool truncation_warning = false;
  std::optional<CountingRecord> counting;
};

/// Coincidence probability (or counts) sampled against the phase difference.
struct Pattern {
  std::vector<double> delta_phi_grid;
  std::vector<double> values;
  PatternMeta meta;
};

/// `points` samples evenly spaced over [lo, hi]; a single point sits at lo.
std::vector<double> linspace(double lo, double hi, int points);

/// 241 points over [-2 pi, 2 pi].
std::vector<double> default_phase_grid();

}  // namespace freqpath
