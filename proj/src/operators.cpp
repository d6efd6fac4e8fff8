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

#include "qla/operators.hpp"

#include <cmath>
#include <string>

namespace qla {

namespace {

constexpr std::array<CouplingPair, 2> kPairsY{{{0, 5, +1, 0}, {2, 3, -1, 2}}};
constexpr std::array<CouplingPair, 2> kPairsX{{{1, 5, -1, 1}, {2, 4, +1, 2}}};

void require_shape(const LatticeGeometry& a, const LatticeGeometry& b) {
  if (!(a == b)) throw LatticeError("angle field and qubit field shapes differ");
}

bool in_set(Axis axis, StreamSet set, int comp) {
  const auto c = stream_components(axis, set);
  return c[0] == comp || c[1] == comp;
}

// roll along one axis: out(site) = in(site - shift)
std::vector<double> rolled(const std::vector<double>& in, const LatticeGeometry& g, Axis axis, int shift) {
  std::vector<double> out(in.size());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t src = axis == Axis::X ? g.index(i - shift, j) : g.index(i, j - shift);
      out[g.index(i, j)] = in[src];
    }
  }
  return out;
}

}  // namespace

const std::array<CouplingPair, 2>& coupling_pairs(Axis axis) { return axis == Axis::X ? kPairsX : kPairsY; }

std::array<int, 2> stream_components(Axis axis, StreamSet set) {
  if (axis == Axis::Y) return set == StreamSet::A ? std::array<int, 2>{0, 3} : std::array<int, 2>{2, 5};
  return set == StreamSet::A ? std::array<int, 2>{2, 5} : std::array<int, 2>{1, 4};
}

int first_shift(StreamSet set) { return set == StreamSet::A ? -1 : +1; }

void validate_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= kMaxEpsilon)) {
    throw std::invalid_argument("epsilon must lie in (0, 0.5], got " + std::to_string(eps));
  }
}

namespace {

// Rounded cos and sin leave c^2 + s^2 off 1 by an ulp, which compounds over
// many rotations. Nudge s so the pair is norm-preserving to ~1e-18.
double unit_norm_sin(double c, double s) {
  if (s == 0.0) return s;
  for (int it = 0; it < 2; ++it) {
    const double r = std::fma(c, c, -1.0) + s * s;
    s -= r / (2.0 * s);
  }
  return s;
}

}  // namespace

CollisionAngles compute_collision_angles(const DielectricMap& map, double eps, Axis axis) {
  if (!(eps >= 0.0 && eps <= kMaxEpsilon)) throw std::invalid_argument("epsilon must lie in [0, 0.5]");
  CollisionAngles out;
  out.axis = axis;
  out.geom = map.geometry();
  const auto& pairs = coupling_pairs(axis);
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& inv = map.inv_n(pairs[p].index_comp);
    const std::size_t n = inv.size();
    out.theta[p].resize(n);
    out.cos[p].resize(n);
    out.sin[p].resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double th = 0.25 * eps * inv[k];
      out.theta[p][k] = th;
      out.cos[p][k] = std::cos(th);
      out.sin[p][k] = unit_norm_sin(out.cos[p][k], std::sin(th));
    }
  }
  return out;
}

CollisionAngles displaced_angles(const CollisionAngles& local, StreamSet set, int shift) {
  CollisionAngles out = local;
  const auto& pairs = coupling_pairs(local.axis);
  for (std::size_t p = 0; p < 2; ++p) {
    if (!in_set(local.axis, set, pairs[p].a)) continue;
    out.theta[p] = rolled(local.theta[p], local.geom, local.axis, shift);
    out.cos[p] = rolled(local.cos[p], local.geom, local.axis, shift);
    out.sin[p] = rolled(local.sin[p], local.geom, local.axis, shift);
  }
  return out;
}

void collide(QubitField& field, const CollisionAngles& angles, int sign) {
  require_shape(field.geometry(), angles.geom);
  const double sg = sign >= 0 ? 1.0 : -1.0;
  const auto& pairs = coupling_pairs(angles.axis);
  for (std::size_t p = 0; p < 2; ++p) {
    double* a = field.comp(pairs[p].a).data();
    double* b = field.comp(pairs[p].b).data();
    const double* c = angles.cos[p].data();
    const double* s = angles.sin[p].data();
    const std::size_t n = field.geometry().sites();
    for (std::size_t k = 0; k < n; ++k) rotate_pair(a[k], b[k], c[k], sg * s[k]);
  }
}

void collide_x(QubitField& field, const CollisionAngles& angles, int sign) {
  if (angles.axis != Axis::X) throw std::invalid_argument("collide_x needs x-axis angles");
  collide(field, angles, sign);
}

void collide_y(QubitField& field, const CollisionAngles& angles, int sign) {
  if (angles.axis != Axis::Y) throw std::invalid_argument("collide_y needs y-axis angles");
  collide(field, angles, sign);
}

void stream(QubitField& field, Axis axis, StreamSet set, int shift) {
  if (shift != 1 && shift != -1) throw std::invalid_argument("stream shift must be +1 or -1");
  for (int c : stream_components(axis, set)) {
    field.comp(c) = rolled(field.comp(c), field.geometry(), axis, shift);
  }
}

PotentialAngles compute_potential_angles(const DielectricMap& map, double eps, Axis axis, double coupling) {
  PotentialAngles out;
  out.axis = axis;
  out.geom = map.geometry();
  const auto& pairs = coupling_pairs(axis);
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& d = map.inv_n_diff(pairs[p].index_comp, axis);
    out.beta[p].resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) out.beta[p][k] = coupling * 0.25 * eps * d[k];
  }
  return out;
}

void potential(QubitField& field, const PotentialAngles& angles, PotentialForm form) {
  require_shape(field.geometry(), angles.geom);
  const auto& pairs = coupling_pairs(angles.axis);
  for (std::size_t p = 0; p < 2; ++p) {
    double* a = field.comp(pairs[p].a).data();
    double* b = field.comp(pairs[p].b).data();
    const double sg = pairs[p].sign;
    const auto& beta = angles.beta[p];
    for (std::size_t k = 0; k < beta.size(); ++k) {
      const double c = std::cos(beta[k]);
      const double s = sg * std::sin(beta[k]);
      if (form == PotentialForm::Sparse) {
        b[k] = s * a[k] + c * b[k];
      } else {
        rotate_pair(a[k], b[k], c, s);
      }
    }
  }
}

void potential_x(QubitField& field, const PotentialAngles& angles, PotentialForm form) {
  if (angles.axis != Axis::X) throw std::invalid_argument("potential_x needs x-axis angles");
  potential(field, angles, form);
}

void potential_y(QubitField& field, const PotentialAngles& angles, PotentialForm form) {
  if (angles.axis != Axis::Y) throw std::invalid_argument("potential_y needs y-axis angles");
  potential(field, angles, form);
}

}  // namespace qla
