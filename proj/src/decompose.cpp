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
#include <cmath>
#include <numbers>

#include "qla/operators.hpp"

namespace qla {

namespace {

constexpr double kStructureTol = 1e-12;

// 2x2 rotation written into rows/cols (p, q).
void put_rotation(Mat6& m, int p, int q, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m[p][p] = c;
  m[p][q] = -s;
  m[q][p] = s;
  m[q][q] = c;
}

// The two components an axis leaves untouched.
std::array<int, 2> spectators(Axis axis) {
  return axis == Axis::Y ? std::array<int, 2>{1, 4} : std::array<int, 2>{0, 3};
}

bool matches_structure(const Mat6& v, Axis axis) {
  const auto& pairs = coupling_pairs(axis);
  auto free_entry = [&](int r, int c) {
    for (const auto& p : pairs) {
      if (r == p.b && (c == p.a || c == p.b)) return true;
    }
    return false;
  };
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      if (free_entry(r, c)) continue;
      const double want = r == c ? 1.0 : 0.0;
      if (std::abs(v[r][c] - want) > kStructureTol) return false;
    }
  }
  for (const auto& p : pairs) {
    const double s = v[p.b][p.a];
    const double c = v[p.b][p.b];
    if (std::abs(s * s + c * c - 1.0) > kStructureTol) return false;
  }
  return true;
}

Axis detect_axis(const Mat6& v) {
  if (matches_structure(v, Axis::Y)) return Axis::Y;
  if (matches_structure(v, Axis::X)) return Axis::X;
  throw DecompositionError("matrix does not have the sparse potential structure");
}

// One pair's factor as cos(x) * A + sin(x) * B with x = beta / 2. A rotates
// every 2x2 block by x; B holds the reflection-like block on the pair and a
// rotation by x - pi/2 elsewhere, so the spectator blocks sum to identity.
void pair_factor(Axis axis, int which, double beta, Mat6& a, Mat6& b) {
  const auto& pairs = coupling_pairs(axis);
  const auto& p = pairs[static_cast<std::size_t>(which)];
  const auto& other = pairs[static_cast<std::size_t>(1 - which)];
  const auto spec = spectators(axis);
  const double x = 0.5 * beta;
  a = Mat6{};
  b = Mat6{};
  put_rotation(a, p.a, p.b, x);
  put_rotation(a, other.a, other.b, x);
  put_rotation(a, spec[0], spec[1], x);
  b[p.a][p.a] = std::sin(x);
  b[p.a][p.b] = std::cos(x);
  b[p.b][p.a] = std::cos(x);
  b[p.b][p.b] = -std::sin(x);
  put_rotation(b, other.a, other.b, x - 0.5 * std::numbers::pi);
  put_rotation(b, spec[0], spec[1], x - 0.5 * std::numbers::pi);
}

struct Svd2 {
  double u[2][2];
  double sigma[2];
  double vt[2][2];
};

// Closed-form SVD of a real 2x2 matrix [[p, q], [r, t]].
Svd2 svd2(double p, double q, double r, double t) {
  const double e = 0.5 * (p + t);
  const double f = 0.5 * (p - t);
  const double g = 0.5 * (r + q);
  const double h = 0.5 * (r - q);
  const double qq = std::hypot(e, h);
  const double rr = std::hypot(f, g);
  const double sx = qq + rr;
  const double sy = qq - rr;
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);
  Svd2 out{};
  out.u[0][0] = std::cos(phi);
  out.u[0][1] = -std::sin(phi);
  out.u[1][0] = std::sin(phi);
  out.u[1][1] = std::cos(phi);
  const double flip = sy < 0.0 ? -1.0 : 1.0;
  out.sigma[0] = sx;
  out.sigma[1] = std::abs(sy);
  out.vt[0][0] = std::cos(theta);
  out.vt[0][1] = -std::sin(theta);
  out.vt[1][0] = flip * std::sin(theta);
  out.vt[1][1] = flip * std::cos(theta);
  return out;
}

}  // namespace

Mat6 identity6() {
  Mat6 m{};
  for (int k = 0; k < 6; ++k) m[k][k] = 1.0;
  return m;
}

Mat6 matmul(const Mat6& x, const Mat6& y) {
  Mat6 m{};
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      double s = 0.0;
      for (int k = 0; k < 6; ++k) s += x[r][k] * y[k][c];
      m[r][c] = s;
    }
  }
  return m;
}

Mat6 transpose(const Mat6& x) {
  Mat6 m{};
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) m[r][c] = x[c][r];
  }
  return m;
}

Mat6 scaled(const Mat6& x, double w) {
  Mat6 m = x;
  for (auto& row : m) {
    for (double& v : row) v *= w;
  }
  return m;
}

Mat6 added(const Mat6& x, const Mat6& y) {
  Mat6 m = x;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) m[r][c] += y[r][c];
  }
  return m;
}

double max_abs_diff(const Mat6& x, const Mat6& y) {
  double d = 0.0;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) d = std::max(d, std::abs(x[r][c] - y[r][c]));
  }
  return d;
}

double orthogonality_error(const Mat6& x) { return max_abs_diff(matmul(transpose(x), x), identity6()); }

Mat6 collision_matrix(Axis axis, double theta_pair0, double theta_pair1) {
  Mat6 m = identity6();
  const auto& pairs = coupling_pairs(axis);
  put_rotation(m, pairs[0].a, pairs[0].b, theta_pair0);
  put_rotation(m, pairs[1].a, pairs[1].b, theta_pair1);
  return m;
}

Mat6 potential_matrix(Axis axis, double beta_pair0, double beta_pair1, PotentialForm form) {
  Mat6 m = identity6();
  const auto& pairs = coupling_pairs(axis);
  const double betas[2] = {beta_pair0, beta_pair1};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& p = pairs[k];
    const double s = p.sign * std::sin(betas[k]);
    const double c = std::cos(betas[k]);
    m[p.b][p.a] = s;
    m[p.b][p.b] = c;
    if (form == PotentialForm::Orthogonal) {
      m[p.a][p.a] = c;
      m[p.a][p.b] = -s;
    }
  }
  return m;
}

std::vector<LcuTerm> lcu_decompose(const Mat6& v) {
  const Axis axis = detect_axis(v);
  const auto& pairs = coupling_pairs(axis);
  Mat6 a[2];
  Mat6 b[2];
  double w[2][2];
  for (int k = 0; k < 2; ++k) {
    const auto& p = pairs[static_cast<std::size_t>(k)];
    const double beta = std::atan2(v[p.b][p.a], v[p.b][p.b]);
    pair_factor(axis, k, beta, a[k], b[k]);
    w[k][0] = std::cos(0.5 * beta);
    w[k][1] = std::sin(0.5 * beta);
  }
  std::vector<LcuTerm> terms;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double weight = w[0][i] * w[1][j];
      if (weight == 0.0) continue;
      Mat6 u = matmul(i == 0 ? a[0] : b[0], j == 0 ? a[1] : b[1]);
      if (weight < 0.0) {
        weight = -weight;
        u = scaled(u, -1.0);
      }
      terms.push_back({weight, u});
    }
  }
  return terms;
}

SvdResult svd_decompose(const Mat6& v) {
  const Axis axis = detect_axis(v);
  SvdResult out{identity6(), identity6(), identity6(), 1.0};
  double sigma[6] = {1, 1, 1, 1, 1, 1};
  for (const auto& p : coupling_pairs(axis)) {
    const Svd2 s = svd2(v[p.a][p.a], v[p.a][p.b], v[p.b][p.a], v[p.b][p.b]);
    const int idx[2] = {p.a, p.b};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out.a[idx[r]][idx[c]] = s.u[r][c];
        out.b[idx[r]][idx[c]] = s.vt[r][c];
      }
      sigma[idx[r]] = s.sigma[r];
    }
  }
  out.scale = *std::max_element(sigma, sigma + 6);
  for (int k = 0; k < 6; ++k) out.d[k][k] = sigma[k] / out.scale;
  return out;
}

}  // namespace qla
