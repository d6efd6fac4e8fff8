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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qla/evolution.hpp"
#include "qla/lattice.hpp"
#include "qla/pulses.hpp"

namespace qla {

enum class HeatmapMapping { PositiveClip, Signed };

// Everything a run needs. Parsed from flat "section.key = value" text.
struct RunConfig {
  int nx = 256;
  int ny = 256;
  EvolutionOptions evolution;
  // n_left is medium 1, n_right medium 2
  HalfspaceSpec interface{Axis::X, 0.5, 1.0, 2.0, 2.0, false};
  std::string preset;       // empty when the widths are given explicitly
  double pulse_scale = 0.25;
  PulseSpec pulse;          // zeta0 / chi0 only meaningful if pulse_center_given
  bool pulse_center_given = false;
  bool centered_carrier = false;
  long n_steps = 0;
  long cadence = 100;
  std::string output_dir = "qla2d_out";
  HeatmapMapping heatmap = HeatmapMapping::PositiveClip;
  bool write_snapshots = true;
};

// Carries every problem found, each prefixed with its key or line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// Blank lines and lines starting with '#' are ignored. Unknown keys,
// duplicates, bad values and missing required keys are all reported.
RunConfig parse_config(const std::string& text);

// Resolved configuration as key/value pairs, in a fixed order, suitable for
// echoing into a manifest and for parsing back.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);
std::string format_config(const RunConfig& cfg);

// Keys that must be present in every config.
const std::vector<std::string>& required_config_keys();

}  // namespace qla
