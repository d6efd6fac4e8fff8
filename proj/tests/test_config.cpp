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


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qla/config.hpp"

using namespace qla;

namespace {

const char* kMinimal = R"(# desk-scale burst
grid.nx = 256
grid.ny = 256
medium.n1 = 1
medium.n2 = 2
pulse.preset = burst
pulse.theta = 25
run.steps = 100
)";

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool has_error(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("minimal burst config") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.nx == 256);
  CHECK(c.ny == 256);
  CHECK(c.interface.n_left == 1.0);
  CHECK(c.interface.n_right == 2.0);
  CHECK(c.pulse.theta_inc == 25.0);
  CHECK(c.n_steps == 100);
  CHECK(c.preset == "burst");
  // burst preset lengths at the default quarter scale
  CHECK(c.pulse.zeta_w == 5.0);
  CHECK(c.pulse.chi_w == 25.0);
  CHECK(c.pulse.gamma_w == 5.0);
  CHECK_FALSE(c.pulse_center_given);
  CHECK(c.evolution.eps == 0.25);
  CHECK(c.cadence == 100);
}

TEST_CASE("empty text lists every required key") {
  const auto errors = errors_of("");
  for (const auto& k : required_config_keys()) CHECK(has_error(errors, k + ": missing required key"));
  CHECK(required_config_keys().size() == 6);
  CHECK(has_error(errors, "pulse.preset: missing"));
}

TEST_CASE("negative chi_w names the key") {
  const auto errors = errors_of(R"(grid.nx = 256
grid.ny = 256
medium.n1 = 1
medium.n2 = 2
pulse.zeta_w = 5
pulse.chi_w = -5
pulse.gamma_w = 5
pulse.theta = 25
run.steps = 10
)");
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == "pulse.chi_w: value -5 must be > 0");
}

TEST_CASE("all problems are reported together") {
  const auto errors = errors_of(R"(grid.nx = 4
grid.ny = twelve
grid.nz = 3
medium.n1 = 1
medium.n1 = 1.5
medium.n2 = 0
pulse.preset = huge
pulse.theta = 90
run.steps = -1
interface.axis = z
output.heatmap = rainbow
just some words
)");
  CHECK(has_error(errors, "grid.nx: value 4 outside"));
  CHECK(has_error(errors, "grid.ny: expected an integer"));
  CHECK(has_error(errors, "grid.nz: unknown key (line 3)"));
  CHECK(has_error(errors, "medium.n1: given more than once (line 5)"));
  CHECK(has_error(errors, "medium.n2: value 0 must be > 0"));
  CHECK(has_error(errors, "pulse.preset: unknown preset 'huge'"));
  CHECK(has_error(errors, "pulse.theta: value 90 outside [0, 90)"));
  CHECK(has_error(errors, "run.steps: value -1 outside"));
  CHECK(has_error(errors, "interface.axis: expected x or y"));
  CHECK(has_error(errors, "output.heatmap: expected positive or signed"));
  CHECK(has_error(errors, "line 12: expected 'key = value'"));
  CHECK(errors.size() >= 11);
}

TEST_CASE("pulse width rules") {
  const std::string base = "grid.nx = 64\ngrid.ny = 64\nmedium.n1 = 1\nmedium.n2 = 2\npulse.theta = 0\nrun.steps = 1\n";
  CHECK(has_error(errors_of(base + "pulse.preset = burst\npulse.zeta_w = 3\n"), "pulse.zeta_w: conflicts with pulse.preset"));
  CHECK(has_error(errors_of(base + "pulse.zeta_w = 3\n"), "pulse.chi_w: missing"));
  CHECK(has_error(errors_of(base + "pulse.scale = 0.5\npulse.zeta_w = 3\npulse.chi_w = 3\npulse.gamma_w = 3\n"),
                  "pulse.scale: only applies"));
  CHECK(has_error(errors_of(base + "pulse.preset = finite\npulse.zeta0 = 3\n"), "pulse.chi0: pulse.zeta0 and pulse.chi0"));
  CHECK(has_error(errors_of(base + "pulse.preset = finite\npulse.amplitude = 0\n"), "pulse.amplitude: must be nonzero"));
  const RunConfig c = parse_config(base + "pulse.preset = thin_long\npulse.scale = 0.5\npulse.zeta0 = 1\npulse.chi0 = 2\n");
  CHECK(c.pulse.zeta_w == 50.0);
  CHECK(c.pulse.chi_w == 10.0);
  CHECK(c.pulse.gamma_w == 10.0);
  CHECK(c.pulse_center_given);
  CHECK(c.pulse.chi0 == 2.0);
}

TEST_CASE("interface options") {
  const std::string base = std::string(kMinimal);
  const RunConfig c = parse_config(base + "interface.axis = y\ninterface.fraction = 0.25\ninterface.smoothing = 0\n"
                                          "interface.blend = harmonic\n");
  CHECK(c.interface.axis == Axis::Y);
  CHECK(c.interface.split_fraction == 0.25);
  CHECK(c.interface.harmonic_blend);
  CHECK(has_error(errors_of(base + "interface.blend = harmonic\n"), "interface.blend: harmonic needs"));
  CHECK(has_error(errors_of(base + "interface.fraction = 1\n"), "interface.fraction: value 1 outside (0, 1)"));
}

TEST_CASE("evolution and output options") {
  const RunConfig c = parse_config(std::string(kMinimal) +
                                   "evolution.eps = 0.1\nevolution.first_order = true\nevolution.workers = 3\n"
                                   "evolution.potential_coupling = 0.5\nevolution.potential_form = orthogonal\n"
                                   "output.dir = runs/a\noutput.heatmap = signed\noutput.snapshots = no\nrun.cadence = 7\n");
  CHECK(c.evolution.eps == 0.1);
  CHECK(c.evolution.first_order);
  CHECK(c.evolution.workers == 3);
  CHECK(c.evolution.potential_coupling == 0.5);
  CHECK(c.evolution.potential_form == PotentialForm::Orthogonal);
  CHECK(c.output_dir == "runs/a");
  CHECK(c.heatmap == HeatmapMapping::Signed);
  CHECK_FALSE(c.write_snapshots);
  CHECK(c.cadence == 7);
  CHECK(has_error(errors_of(std::string(kMinimal) + "evolution.eps = 0.6\n"), "evolution.eps: value 0.6 outside (0, 0.5]"));
  CHECK(has_error(errors_of(std::string(kMinimal) + "run.cadence = 0\n"), "run.cadence"));
}

TEST_CASE("echo parses back to the same config") {
  const RunConfig a = parse_config(std::string(kMinimal) + "pulse.zeta0 = 12.5\npulse.chi0 = -3\nevolution.eps = 0.125\n");
  const RunConfig b = parse_config(format_config(a));
  CHECK(format_config(b) == format_config(a));
  CHECK(b.pulse.zeta_w == a.pulse.zeta_w);
  CHECK(b.pulse.zeta0 == 12.5);
  CHECK(b.evolution.eps == 0.125);
  CHECK(b.preset.empty());
  const auto entries = config_entries(a);
  CHECK(entries.front().first == "grid.nx");
  CHECK(entries.back().first == "output.snapshots");
}

TEST_CASE("error message carries every line") {
  try {
    parse_config("grid.nx = 1\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("invalid config") == 0);
    for (const auto& err : e.errors()) CHECK(what.find(err) != std::string::npos);
  }
}

TEST_CASE("shipped configs parse") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QLA_CONFIG_DIR)) {
    if (entry.path().extension() != ".conf") continue;
    CAPTURE(entry.path().string());
    std::ifstream in(entry.path());
    std::stringstream text;
    text << in.rdbuf();
    const RunConfig c = parse_config(text.str());
    CHECK(c.n_steps > 0);
    ++count;
  }
  CHECK(count >= 4);
}
