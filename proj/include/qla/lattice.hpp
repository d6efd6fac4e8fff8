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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qla {

inline constexpr int kComponents = 6;
inline constexpr int kMinSites = 8;

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Axis { X, Y };

// Periodic 2D lattice. Site (i, j) lives at flat index j * nx + i, so x is the
// fast axis and rows run along x.
struct LatticeGeometry {
  int nx = 0;
  int ny = 0;

  static LatticeGeometry make(int nx, int ny);

  std::size_t sites() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  int wrap_x(int i) const { return ((i % nx) + nx) % nx; }
  int wrap_y(int j) const { return ((j % ny) + ny) % ny; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(wrap_y(j)) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(wrap_x(i));
  }
  bool operator==(const LatticeGeometry&) const = default;
};

// Six real Dyson amplitudes per site, stored as separate scalar lattices.
// q0..q2 are n_i * E_i, q3..q5 are H_x, H_y, H_z.
class QubitField {
 public:
  QubitField() = default;
  explicit QubitField(LatticeGeometry geom);

  const LatticeGeometry& geometry() const { return geom_; }
  std::vector<double>& comp(int c) { return q_[static_cast<std::size_t>(c)]; }
  const std::vector<double>& comp(int c) const { return q_[static_cast<std::size_t>(c)]; }
  double& at(int c, int i, int j) { return q_[static_cast<std::size_t>(c)][geom_.index(i, j)]; }
  double at(int c, int i, int j) const { return q_[static_cast<std::size_t>(c)][geom_.index(i, j)]; }

  bool all_finite() const;
  void fill_zero();

 private:
  LatticeGeometry geom_;
  std::array<std::vector<double>, kComponents> q_;
};

QubitField new_field(const LatticeGeometry& geom);

// Diagonal refractive index (n_x, n_y, n_z) per site with cached 1/n and its
// centered differences along both axes. Every mutation recomputes the caches.
class DielectricMap {
 public:
  DielectricMap() = default;
  explicit DielectricMap(LatticeGeometry geom, double n = 1.0);

  const LatticeGeometry& geometry() const { return geom_; }

  const std::vector<double>& n(int c) const { return n_[static_cast<std::size_t>(c)]; }
  const std::vector<double>& inv_n(int c) const { return inv_[static_cast<std::size_t>(c)]; }
  // (1/n)(i+1) - (1/n)(i-1) along the given axis.
  const std::vector<double>& inv_n_diff(int c, Axis axis) const {
    return axis == Axis::X ? dx_[static_cast<std::size_t>(c)] : dy_[static_cast<std::size_t>(c)];
  }

  void set_uniform(double n);
  // Same scalar index on all three components.
  void set_scalar(const std::vector<double>& n);
  void set_components(const std::array<std::vector<double>, 3>& n);

  bool homogeneous() const;

 private:
  void refresh();

  LatticeGeometry geom_;
  std::array<std::vector<double>, 3> n_;
  std::array<std::vector<double>, 3> inv_;
  std::array<std::vector<double>, 3> dx_;
  std::array<std::vector<double>, 3> dy_;
};

struct HalfspaceSpec {
  Axis axis = Axis::X;
  double split_fraction = 0.5;
  double n_left = 1.0;
  double n_right = 2.0;
  double smoothing_width = 0.0;
  // Sharp interfaces only: the first right-hand row/column takes the index
  // whose permittivity is the harmonic mean of the two sides.
  bool harmonic_blend = false;
};

// Sites with coordinate below split_fraction * extent are "left". A positive
// width replaces the jump with a tanh ramp centred between the two boundary
// sites. The periodic seam at coordinate 0 is always a sharp jump.
void set_halfspace_dielectric(DielectricMap& map, const HalfspaceSpec& spec);

// Index of the first right-hand row/column along the split axis.
int split_site(const LatticeGeometry& geom, const HalfspaceSpec& spec);

struct PhysicalFields {
  LatticeGeometry geom;
  std::vector<double> ex, ey, ez, hx, hy, hz;
};

PhysicalFields to_physical(const QubitField& field, const DielectricMap& map);
QubitField from_physical(const PhysicalFields& phys, const DielectricMap& map);

}  // namespace qla
