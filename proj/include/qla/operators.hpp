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
#include <vector>

#include "qla/lattice.hpp"

namespace qla {

// Two amplitudes rotated together by one axis' collision operator. `sign` is
// the sign of the derivative coupling in the target Maxwell system and
// `index_comp` selects which refractive-index component sets the angle.
struct CouplingPair {
  int a;
  int b;
  int sign;
  int index_comp;
};

// y: (q0, q5) from n_x and (q2, q3) from n_z.
// x: (q1, q5) from n_y and (q2, q4) from n_z.
const std::array<CouplingPair, 2>& coupling_pairs(Axis axis);

// y: A = {q0, q3}, B = {q2, q5}.  x: A = {q2, q5}, B = {q1, q4}.
// Each set holds exactly one member of each coupling pair.
enum class StreamSet { A, B };
std::array<int, 2> stream_components(Axis axis, StreamSet set);
// Shift that opens the collide-stream sweep of a set: -1 for A, +1 for B.
int first_shift(StreamSet set);

struct CollisionAngles {
  Axis axis = Axis::Y;
  LatticeGeometry geom;
  // Indexed by coupling pair.
  std::array<std::vector<double>, 2> theta;
  std::array<std::vector<double>, 2> cos;
  std::array<std::vector<double>, 2> sin;
};

inline constexpr double kMaxEpsilon = 0.5;
void validate_epsilon(double eps);

// theta = eps / (4 n) per site, so a pulse advances eps / n sites per step.
CollisionAngles compute_collision_angles(const DielectricMap& map, double eps, Axis axis);

// Angles seen after streaming `set` by `shift`: each pair uses the angle of
// the site its `a` amplitude came from, which keeps 1/n outside the derivative
// for that amplitude in an inhomogeneous medium.
CollisionAngles displaced_angles(const CollisionAngles& local, StreamSet set, int shift);

// Per-site rotation a' = c a - s b, b' = s a + c b with s multiplied by sign.
void collide(QubitField& field, const CollisionAngles& angles, int sign);
void collide_x(QubitField& field, const CollisionAngles& angles, int sign);
void collide_y(QubitField& field, const CollisionAngles& angles, int sign);

// new(site + shift) = old(site) for the two components of `set`.
void stream(QubitField& field, Axis axis, StreamSet set, int shift);

enum class PotentialForm {
  // Lower-row-only matrix: b <- sign sin(beta) a + cos(beta) b.
  Sparse,
  // Same lower row completed to a rotation (adds a <- cos(beta) a - sign sin(beta) b).
  Orthogonal,
};

struct PotentialAngles {
  Axis axis = Axis::Y;
  LatticeGeometry geom;
  std::array<std::vector<double>, 2> beta;
};

// beta = coupling * (eps / 4) * ((1/n)(+1) - (1/n)(-1)) along the axis.
PotentialAngles compute_potential_angles(const DielectricMap& map, double eps, Axis axis,
                                         double coupling = 1.0);

void potential(QubitField& field, const PotentialAngles& angles, PotentialForm form = PotentialForm::Sparse);
void potential_x(QubitField& field, const PotentialAngles& angles, PotentialForm form = PotentialForm::Sparse);
void potential_y(QubitField& field, const PotentialAngles& angles, PotentialForm form = PotentialForm::Sparse);

// The shared rotation kernel. Every code path goes through this so fused and
// literal schedules agree bit for bit.
inline void rotate_pair(double& a, double& b, double c, double s) {
  const double av = a;
  const double bv = b;
  a = c * av - s * bv;
  b = s * av + c * bv;
}

// ---- 6x6 single-site matrices --------------------------------------------

using Mat6 = std::array<std::array<double, 6>, 6>;

Mat6 identity6();
Mat6 matmul(const Mat6& x, const Mat6& y);
Mat6 transpose(const Mat6& x);
Mat6 scaled(const Mat6& x, double w);
Mat6 added(const Mat6& x, const Mat6& y);
double max_abs_diff(const Mat6& x, const Mat6& y);
// max |X^T X - I|
double orthogonality_error(const Mat6& x);

// Per-site collision matrix for the axis' two pair angles.
Mat6 collision_matrix(Axis axis, double theta_pair0, double theta_pair1);
// Per-site potential matrix for the axis' two pair angles.
Mat6 potential_matrix(Axis axis, double beta_pair0, double beta_pair1,
                      PotentialForm form = PotentialForm::Sparse);

class DecompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LcuTerm {
  double weight;
  Mat6 unitary;
};

// Writes a sparse potential matrix as a non-negative combination of at most
// four orthogonal matrices.
std::vector<LcuTerm> lcu_decompose(const Mat6& v);

struct SvdResult {
  Mat6 a;
  Mat6 d;
  Mat6 b;
  double scale;
};

// V = A (scale D) B with A, B orthogonal and D diagonal in [0, 1], max(D) = 1.
SvdResult svd_decompose(const Mat6& v);

}  // namespace qla
