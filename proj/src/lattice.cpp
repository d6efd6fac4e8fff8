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

#include "qla/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace qla {

LatticeGeometry LatticeGeometry::make(int nx, int ny) {
  if (nx < kMinSites) {
    throw LatticeError("nx_sites below minimum of " + std::to_string(kMinSites) + ": " + std::to_string(nx));
  }
  if (ny < kMinSites) {
    throw LatticeError("ny_sites below minimum of " + std::to_string(kMinSites) + ": " + std::to_string(ny));
  }
  return LatticeGeometry{nx, ny};
}

QubitField::QubitField(LatticeGeometry geom) : geom_(LatticeGeometry::make(geom.nx, geom.ny)) {
  for (auto& c : q_) c.assign(geom_.sites(), 0.0);
}

bool QubitField::all_finite() const {
  for (const auto& c : q_) {
    for (double v : c) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void QubitField::fill_zero() {
  for (auto& c : q_) std::fill(c.begin(), c.end(), 0.0);
}

QubitField new_field(const LatticeGeometry& geom) { return QubitField(geom); }

DielectricMap::DielectricMap(LatticeGeometry geom, double n) : geom_(LatticeGeometry::make(geom.nx, geom.ny)) {
  set_uniform(n);
}

void DielectricMap::set_uniform(double n) {
  set_scalar(std::vector<double>(geom_.sites(), n));
}

void DielectricMap::set_scalar(const std::vector<double>& n) { set_components({n, n, n}); }

void DielectricMap::set_components(const std::array<std::vector<double>, 3>& n) {
  for (const auto& c : n) {
    if (c.size() != geom_.sites()) throw LatticeError("refractive index field has wrong size");
    for (double v : c) {
      if (!(v > 0.0) || !std::isfinite(v)) throw LatticeError("refractive index must be positive and finite");
    }
  }
  n_ = n;
  refresh();
}

void DielectricMap::refresh() {
  const int nx = geom_.nx;
  const int ny = geom_.ny;
  for (std::size_t c = 0; c < 3; ++c) {
    inv_[c].resize(geom_.sites());
    for (std::size_t k = 0; k < geom_.sites(); ++k) inv_[c][k] = 1.0 / n_[c][k];
    dx_[c].resize(geom_.sites());
    dy_[c].resize(geom_.sites());
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = geom_.index(i, j);
        dx_[c][k] = inv_[c][geom_.index(i + 1, j)] - inv_[c][geom_.index(i - 1, j)];
        dy_[c][k] = inv_[c][geom_.index(i, j + 1)] - inv_[c][geom_.index(i, j - 1)];
      }
    }
  }
}

bool DielectricMap::homogeneous() const {
  for (const auto& c : n_) {
    if (std::any_of(c.begin(), c.end(), [&](double v) { return v != c.front(); })) return false;
  }
  return true;
}

int split_site(const LatticeGeometry& geom, const HalfspaceSpec& spec) {
  const int extent = spec.axis == Axis::X ? geom.nx : geom.ny;
  return static_cast<int>(std::ceil(spec.split_fraction * extent));
}

void set_halfspace_dielectric(DielectricMap& map, const HalfspaceSpec& spec) {
  if (!(spec.n_left > 0.0) || !(spec.n_right > 0.0)) throw LatticeError("refractive indices must be positive");
  if (!(spec.split_fraction > 0.0 && spec.split_fraction < 1.0)) {
    throw LatticeError("split_fraction must lie in (0, 1)");
  }
  if (!(spec.smoothing_width >= 0.0)) throw LatticeError("smoothing_width must be non-negative");
  if (spec.harmonic_blend && spec.smoothing_width != 0.0) {
    throw LatticeError("harmonic_blend needs a sharp interface");
  }
  const double n_blend =
      std::sqrt(2.0 / (1.0 / (spec.n_left * spec.n_left) + 1.0 / (spec.n_right * spec.n_right)));

  const LatticeGeometry& g = map.geometry();
  const int split = split_site(g, spec);
  std::vector<double> n(g.sites());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int s = spec.axis == Axis::X ? i : j;
      double v;
      if (spec.smoothing_width == 0.0) {
        v = s < split ? spec.n_left : spec.n_right;
        if (spec.harmonic_blend && s == split) v = n_blend;
      } else {
        const double r = 0.5 * (1.0 + std::tanh((s + 0.5 - split) / spec.smoothing_width));
        v = spec.n_left + (spec.n_right - spec.n_left) * r;
      }
      n[g.index(i, j)] = v;
    }
  }
  map.set_scalar(n);
}

PhysicalFields to_physical(const QubitField& field, const DielectricMap& map) {
  if (!(field.geometry() == map.geometry())) throw LatticeError("field and dielectric map shapes differ");
  PhysicalFields p;
  p.geom = field.geometry();
  const std::size_t n = p.geom.sites();
  p.ex.resize(n);
  p.ey.resize(n);
  p.ez.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.ex[k] = field.comp(0)[k] / map.n(0)[k];
    p.ey[k] = field.comp(1)[k] / map.n(1)[k];
    p.ez[k] = field.comp(2)[k] / map.n(2)[k];
  }
  p.hx = field.comp(3);
  p.hy = field.comp(4);
  p.hz = field.comp(5);
  return p;
}

QubitField from_physical(const PhysicalFields& phys, const DielectricMap& map) {
  if (!(phys.geom == map.geometry())) throw LatticeError("physical fields and dielectric map shapes differ");
  QubitField f(phys.geom);
  const std::size_t n = phys.geom.sites();
  for (std::size_t k = 0; k < n; ++k) {
    f.comp(0)[k] = phys.ex[k] * map.n(0)[k];
    f.comp(1)[k] = phys.ey[k] * map.n(1)[k];
    f.comp(2)[k] = phys.ez[k] * map.n(2)[k];
  }
  f.comp(3) = phys.hx;
  f.comp(4) = phys.hy;
  f.comp(5) = phys.hz;
  return f;
}

}  // namespace qla
