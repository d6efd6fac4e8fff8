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

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qla/lattice.hpp"

namespace qla {

// Gaussian wave packet in the rotated frame (zeta along propagation, chi
// across it). Lengths in sites, angle in degrees.
struct PulseSpec {
  double zeta0 = 0.0;
  double chi0 = 0.0;
  double zeta_w = 20.0;
  double chi_w = 100.0;
  double gamma_w = 20.0;
  double theta_inc = 25.0;
  double amplitude = 1.0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ScenarioPreset {
  std::string name;
  double zeta_w;
  double chi_w;
  double gamma_w;
};

// burst (20, 100, 20), thin_long (100, 20, 20), finite (50, 50, 20).
const std::vector<ScenarioPreset>& scenario_presets();
// Throws std::out_of_range for an unknown name.
const ScenarioPreset& find_preset(const std::string& name);

// [x; y] = [cos t, sin t; -sin t, cos t] [zeta; chi], t in degrees.
std::pair<double, double> rotate_to_lab(double zeta, double chi, double theta_deg);
std::pair<double, double> rotate_to_frame(double x, double y, double theta_deg);

struct PulseOptions {
  // Carrier cos(2 pi zeta / gamma_w) with absolute zeta by default;
  // true uses zeta - zeta0 so the packet peak sits on a carrier crest.
  bool centered_carrier = false;
  // Sample each amplitude at its staggered position (q0, q3 half a site
  // down in y; q1, q4 half a site up in x). Collocated sampling leaves a
  // small backward-moving copy of the pulse.
  bool staggered_sampling = true;
  // Largest envelope allowed on sites whose index differs from the centre's.
  double overlap_tolerance = 1e-8;
};

class PulseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Envelope summed over periodic images, evaluated at lab position (x, y).
double pulse_envelope(const LatticeGeometry& geom, const PulseSpec& spec, double x, double y);

// H_z = -A env cos(...), E_chi = H_z / n1 with n1 the index at the packet
// centre, E = E_chi (sin t, cos t), q = n E. Everything else is zero.
QubitField init_pulse(const LatticeGeometry& geom, const DielectricMap& map, const PulseSpec& spec,
                      const PulseOptions& opts = {});

// Normalised sum of E x H over the lattice.
std::array<double, 2> pulse_poynting_direction(const QubitField& field, const DielectricMap& map);

// Packet centred in medium 1: halfway across the left region along the split
// axis and mid-lattice along the other.
PulseSpec centered_pulse(const LatticeGeometry& geom, const HalfspaceSpec& halfspace, double zeta_w, double chi_w,
                         double gamma_w, double theta_inc, double amplitude = 1.0);

}  // namespace qla
