// Copyright 2026 The QLA2D Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qla/config.hpp"
#include "qla/diagnostics.hpp"

namespace qla {

// Environment variable that replaces output.dir when set and non-empty.
inline constexpr const char* kOutputDirEnv = "QLA2D_OUTPUT_DIR";

const char* version_string();

struct Scenario {
  DielectricMap map;
  PulseSpec pulse;
  QubitField initial;
  RegionMask region1;
};

// Builds the dielectric map and the initial pulse. Without an explicit
// centre the packet sits halfway across medium 1. Problems that only show
// up here (a pulse that overlaps the interface, say) become ConfigErrors.
Scenario build_scenario(const RunConfig& cfg);

std::filesystem::path resolve_output_dir(const RunConfig& cfg);

struct RunResult {
  std::filesystem::path dir;
  EnergyLedger ledger;
  std::vector<std::string> artifacts;
  double seconds = 0.0;
};

// Runs the scenario and writes, under dir: ledger.csv, manifest.json and,
// at every ledger row, field_<t>.qla, hz_<t>.qla and hz_<t>.pgm. The ledger
// and manifest are rewritten as the run goes, so a failed run leaves a
// consistent prefix behind. Throws IoError, NonFiniteFieldError.
RunResult run_scenario(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream* log = nullptr);

}  // namespace qla
