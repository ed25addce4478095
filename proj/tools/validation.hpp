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

#include <string>
#include <vector>

#include "freqpath/config.hpp"

namespace freqpath::cli {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // defect or measured quantity
  double threshold = 0.0;  // pass bound for `measured`
  std::string detail;
};

/// Closure, truncation, unitarity, oracle equivalence, revival and
/// compensated-recovery checks for one configuration. Never throws for
/// numerical failures; a throwing check is reported as failed.
std::vector<ValidationCheck> run_validation(const ExperimentConfig& cfg);

std::string validation_report_json(const std::vector<ValidationCheck>& checks);

}  // namespace freqpath::cli
