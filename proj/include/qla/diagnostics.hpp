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
#include <vector>

#include "qla/lattice.hpp"
#include "qla/parallel.hpp"

namespace qla {

// One byte per site, nonzero = inside.
using RegionMask = std::vector<unsigned char>;

RegionMask full_mask(const LatticeGeometry& geom);
RegionMask empty_mask(const LatticeGeometry& geom);
RegionMask complement(const RegionMask& mask);
// Region 1 is the "left" side of the halfspace split, region 2 the rest.
RegionMask halfspace_region(const LatticeGeometry& geom, const HalfspaceSpec& spec, int region);

// All sums are taken row by row and then combined with tree_sum, so the
// result is the same for every worker count.
double total_energy(const QubitField& field, WorkerPool* pool = nullptr);
double region_energy(const QubitField& field, const RegionMask& mask, WorkerPool* pool = nullptr);

struct DivergenceMetrics {
  double div_h_max = 0.0;
  double div_e_rel = 0.0;
};

// Centered differences of (H_x, H_y) and of (n_x q0, n_y q1) = eps E. The
// electric figure is divided by max |E|.
DivergenceMetrics divergence_metrics(const QubitField& field, const DielectricMap& map);

// In-plane E x H per site, with the staggered amplitudes averaged onto the
// H_z sites.
struct PoyntingField {
  std::vector<double> sx;
  std::vector<double> sy;
};
PoyntingField poynting_field(const QubitField& field, const DielectricMap& map);

class EmptyRegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Centroid {
  double x;
  double y;
};

// Energy-weighted mean site position.
Centroid energy_centroid(const QubitField& field, const RegionMask& mask);
// Same with circular means on the periodic axes, for pulses that straddle a seam.
Centroid energy_centroid_periodic(const QubitField& field, const RegionMask& mask, bool periodic_x,
                                  bool periodic_y);

// Periodic bilinear samples of a per-site field at origin + s * direction,
// s running from -half_length to half_length in steps of spacing. The
// direction is normalised first.
std::vector<double> sample_line(const LatticeGeometry& geom, const std::vector<double>& values, Centroid origin,
                                std::array<double, 2> direction, double half_length, double spacing);

// Twice the mean distance between sign changes of a sampled trace. Only
// the stretch where |trace| reaches rel_threshold of its peak is used.
// Throws std::invalid_argument when fewer than two crossings remain.
double zero_crossing_wavelength(const std::vector<double>& trace, double spacing, double rel_threshold = 0.1);

struct LedgerRow {
  long t = 0;
  double e_total = 0.0;
  double e_region1 = 0.0;
  double e_region2 = 0.0;
  double div_h_max = 0.0;
  double div_e_rel = 0.0;
  double cx = 0.0;
  double cy = 0.0;
};

class EnergyLedger {
 public:
  static constexpr const char* kHeader = "t,E_total,E_region1,E_region2,divH_max,divE_rel,cx,cy";

  // Rows must arrive with strictly increasing t.
  void append(const LedgerRow& row);
  const std::vector<LedgerRow>& rows() const { return rows_; }
  std::string to_csv() const;
  static std::string format_row(const LedgerRow& row);
  // Largest |E_total(t) / E_total(first) - 1|.
  double max_relative_drift() const;

 private:
  std::vector<LedgerRow> rows_;
};

LedgerRow measure(long t, const QubitField& field, const DielectricMap& map, const RegionMask& region1,
                  WorkerPool* pool = nullptr);

}  // namespace qla
