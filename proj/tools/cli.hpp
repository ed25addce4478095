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

#include <iosfwd>
#include <string>
#include <vector>

namespace freqpath::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O and other unexpected errors
inline constexpr int kExitConfig = 2;   // bad config, bad input file, bad flags
inline constexpr int kExitSolver = 3;
inline constexpr int kExitNotConverged = 4;
inline constexpr int kExitValidation = 5;

// Default directory for outputs whose path is not given on the command line.
inline constexpr const char* kOutDirEnv = "FREQPATH_OUT_DIR";

/// Runs the `freqpath` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freqpath::cli
