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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qla/operators.hpp"

using namespace qla;

namespace {

constexpr double kPi = std::numbers::pi;

QubitField random_field(const LatticeGeometry& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QubitField f = new_field(g);
  for (int c = 0; c < kComponents; ++c) {
    for (double& v : f.comp(c)) v = u(rng);
  }
  return f;
}

CollisionAngles uniform_angles(const LatticeGeometry& g, Axis axis, double t0, double t1) {
  CollisionAngles a;
  a.axis = axis;
  a.geom = g;
  const double th[2] = {t0, t1};
  for (int p = 0; p < 2; ++p) {
    a.theta[p].assign(g.sites(), th[p]);
    a.cos[p].assign(g.sites(), std::cos(th[p]));
    a.sin[p].assign(g.sites(), std::sin(th[p]));
  }
  return a;
}

PotentialAngles uniform_beta(const LatticeGeometry& g, Axis axis, double b0, double b1) {
  PotentialAngles a;
  a.axis = axis;
  a.geom = g;
  a.beta[0].assign(g.sites(), b0);
  a.beta[1].assign(g.sites(), b1);
  return a;
}

double max_diff(const QubitField& a, const QubitField& b) {
  double d = 0.0;
  for (int c = 0; c < kComponents; ++c) {
    for (std::size_t k = 0; k < a.comp(c).size(); ++k) d = std::max(d, std::fabs(a.comp(c)[k] - b.comp(c)[k]));
  }
  return d;
}

std::array<double, 6> site(const QubitField& f, int i, int j) {
  std::array<double, 6> v{};
  for (int c = 0; c < 6; ++c) v[c] = f.at(c, i, j);
  return v;
}

void check_site(const QubitField& f, int i, int j, std::array<double, 6> want) {
  for (int c = 0; c < 6; ++c) CHECK(f.at(c, i, j) == doctest::Approx(want[c]).scale(1.0).epsilon(1e-15));
}

}  // namespace

TEST_CASE("pair tables") {
  const auto& y = coupling_pairs(Axis::Y);
  CHECK(y[0].a == 0);
  CHECK(y[0].b == 5);
  CHECK(y[0].index_comp == 0);
  CHECK(y[1].a == 2);
  CHECK(y[1].b == 3);
  CHECK(y[1].index_comp == 2);
  const auto& x = coupling_pairs(Axis::X);
  CHECK(x[0].a == 1);
  CHECK(x[0].b == 5);
  CHECK(x[0].index_comp == 1);
  CHECK(x[1].a == 2);
  CHECK(x[1].b == 4);
  for (Axis ax : {Axis::X, Axis::Y}) {
    const auto a = stream_components(ax, StreamSet::A);
    const auto b = stream_components(ax, StreamSet::B);
    for (const auto& p : coupling_pairs(ax)) {
      const bool a_in_a = p.a == a[0] || p.a == a[1];
      const bool b_in_a = p.b == a[0] || p.b == a[1];
      const bool a_in_b = p.a == b[0] || p.a == b[1];
      const bool b_in_b = p.b == b[0] || p.b == b[1];
      CHECK(a_in_a != b_in_a);
      CHECK(a_in_b != b_in_b);
    }
  }
  CHECK(first_shift(StreamSet::A) == -1);
  CHECK(first_shift(StreamSet::B) == +1);
}

TEST_CASE("collide_y") {
  const auto g = LatticeGeometry::make(8, 8);
  SUBCASE("zero angles are the identity") {
    const QubitField u = random_field(g, 1);
    QubitField f = u;
    collide_y(f, uniform_angles(g, Axis::Y, 0.0, 0.0), +1);
    CHECK(max_diff(f, u) == 0.0);
  }
  SUBCASE("quarter turn moves q0 into q5") {
    QubitField f = new_field(g);
    f.at(0, 2, 3) = 1.0;
    collide_y(f, uniform_angles(g, Axis::Y, kPi / 2, 0.0), +1);
    check_site(f, 2, 3, {0, 0, 0, 0, 0, 1});
  }
  SUBCASE("quarter turn on the second pair moves q2 into q3") {
    QubitField f = new_field(g);
    f.at(2, 2, 3) = 1.0;
    collide_y(f, uniform_angles(g, Axis::Y, 0.0, kPi / 2), +1);
    check_site(f, 2, 3, {0, 0, 0, 1, 0, 0});
  }
  SUBCASE("spectators stay put") {
    QubitField f = new_field(g);
    f.at(1, 0, 0) = 0.3;
    f.at(4, 0, 0) = -0.7;
    collide_y(f, uniform_angles(g, Axis::Y, 0.4, 1.1), +1);
    check_site(f, 0, 0, {0, 0.3, 0, 0, -0.7, 0});
  }
  SUBCASE("opposite sign undoes it") {
    const QubitField u = random_field(g, 2);
    DielectricMap m(g);
    set_halfspace_dielectric(m, {Axis::Y, 0.5, 1.0, 3.0, 1.0});
    const auto a = compute_collision_angles(m, 0.5, Axis::Y);
    QubitField f = u;
    collide_y(f, a, +1);
    collide_y(f, a, -1);
    CHECK(max_diff(f, u) <= 1e-14);
  }
  SUBCASE("wrong axis") {
    QubitField f = new_field(g);
    CHECK_THROWS_AS(collide_y(f, uniform_angles(g, Axis::X, 0.1, 0.1), +1), std::invalid_argument);
  }
}

TEST_CASE("collide_x") {
  const auto g = LatticeGeometry::make(8, 8);
  SUBCASE("zero angles are the identity") {
    const QubitField u = random_field(g, 3);
    QubitField f = u;
    collide_x(f, uniform_angles(g, Axis::X, 0.0, 0.0), +1);
    CHECK(max_diff(f, u) == 0.0);
  }
  SUBCASE("quarter turn moves q1 into q5") {
    QubitField f = new_field(g);
    f.at(1, 5, 6) = 1.0;
    collide_x(f, uniform_angles(g, Axis::X, kPi / 2, 0.0), +1);
    check_site(f, 5, 6, {0, 0, 0, 0, 0, 1});
  }
  SUBCASE("opposite sign undoes it") {
    const QubitField u = random_field(g, 4);
    DielectricMap m(g);
    set_halfspace_dielectric(m, {Axis::X, 0.5, 2.0, 1.0, 0.0});
    const auto a = compute_collision_angles(m, 0.3, Axis::X);
    QubitField f = u;
    collide_x(f, a, +1);
    collide_x(f, a, -1);
    CHECK(max_diff(f, u) <= 1e-14);
  }
}

TEST_CASE("collision matrices are orthogonal") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int k = 0; k < 200; ++k) {
    for (Axis ax : {Axis::X, Axis::Y}) {
      const Mat6 c = collision_matrix(ax, u(rng), u(rng));
      CHECK(orthogonality_error(c) <= 1e-14);
    }
  }
}

TEST_CASE("collision matrix matches the field operator") {
  const auto g = LatticeGeometry::make(8, 8);
  const QubitField u = random_field(g, 6);
  for (Axis ax : {Axis::X, Axis::Y}) {
    QubitField f = u;
    collide(f, uniform_angles(g, ax, 0.3, -0.8), +1);
    const Mat6 m = collision_matrix(ax, 0.3, -0.8);
    const auto in = site(u, 4, 1);
    for (int r = 0; r < 6; ++r) {
      double s = 0.0;
      for (int c = 0; c < 6; ++c) s += m[r][c] * in[c];
      CHECK(f.at(r, 4, 1) == doctest::Approx(s).epsilon(1e-14));
    }
  }
}

TEST_CASE("stream") {
  const auto g = LatticeGeometry::make(8, 10);
  SUBCASE("single value moves one site") {
    QubitField f = new_field(g);
    f.at(0, 3, 4) = 2.5;
    stream(f, Axis::Y, StreamSet::A, +1);
    CHECK(f.at(0, 3, 5) == 2.5);
    CHECK(f.at(0, 3, 4) == 0.0);
    stream(f, Axis::X, StreamSet::A, +1);  // q0 is not an x stream component for set A
    CHECK(f.at(0, 3, 5) == 2.5);
  }
  SUBCASE("wraps around") {
    QubitField f = new_field(g);
    f.at(5, 7, 9) = 1.0;
    stream(f, Axis::X, StreamSet::A, +1);
    CHECK(f.at(5, 0, 9) == 1.0);
    stream(f, Axis::Y, StreamSet::B, +1);
    CHECK(f.at(5, 0, 0) == 1.0);
  }
  SUBCASE("only the listed components move") {
    const QubitField u = random_field(g, 7);
    for (Axis ax : {Axis::X, Axis::Y}) {
      for (StreamSet s : {StreamSet::A, StreamSet::B}) {
        QubitField f = u;
        stream(f, ax, s, -1);
        const auto moved = stream_components(ax, s);
        for (int c = 0; c < kComponents; ++c) {
          if (c == moved[0] || c == moved[1]) {
            CHECK(f.comp(c) != u.comp(c));
          } else {
            CHECK(f.comp(c) == u.comp(c));
          }
        }
        stream(f, ax, s, +1);
        CHECK(max_diff(f, u) == 0.0);
      }
    }
  }
  SUBCASE("is a permutation") {
    const QubitField u = random_field(g, 8);
    QubitField f = u;
    stream(f, Axis::Y, StreamSet::B, +1);
    stream(f, Axis::X, StreamSet::B, -1);
    for (int c = 0; c < kComponents; ++c) {
      auto a = u.comp(c);
      auto b = f.comp(c);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
  SUBCASE("bad shift") {
    QubitField f = new_field(g);
    CHECK_THROWS_AS(stream(f, Axis::X, StreamSet::A, 2), std::invalid_argument);
  }
}

TEST_CASE("potential_y") {
  const auto g = LatticeGeometry::make(8, 8);
  SUBCASE("zero angles are the identity") {
    const QubitField u = random_field(g, 9);
    QubitField f = u;
    potential_y(f, uniform_beta(g, Axis::Y, 0.0, 0.0));
    CHECK(max_diff(f, u) == 0.0);
  }
  SUBCASE("beta2 quarter turn") {
    QubitField f = new_field(g);
    f.at(2, 1, 1) = 1.0;
    f.at(3, 1, 1) = 1.0;
    potential_y(f, uniform_beta(g, Axis::Y, 0.0, kPi / 2));
    check_site(f, 1, 1, {0, 0, 1, -1, 0, 0});
  }
  SUBCASE("beta0 quarter turn") {
    QubitField f = new_field(g);
    f.at(0, 1, 1) = 1.0;
    f.at(5, 1, 1) = 1.0;
    potential_y(f, uniform_beta(g, Axis::Y, kPi / 2, 0.0));
    check_site(f, 1, 1, {1, 0, 0, 0, 0, 1});
  }
  SUBCASE("homogeneous media give the identity") {
    const QubitField u = random_field(g, 10);
    DielectricMap m(g, 1.7);
    QubitField f = u;
    potential_y(f, compute_potential_angles(m, 0.5, Axis::Y));
    potential_x(f, compute_potential_angles(m, 0.5, Axis::X));
    CHECK(max_diff(f, u) == 0.0);
  }
  SUBCASE("matches the matrix") {
    const QubitField u = random_field(g, 11);
    for (PotentialForm form : {PotentialForm::Sparse, PotentialForm::Orthogonal}) {
      QubitField f = u;
      potential_y(f, uniform_beta(g, Axis::Y, 0.4, -0.9), form);
      const Mat6 m = potential_matrix(Axis::Y, 0.4, -0.9, form);
      const auto in = site(u, 6, 2);
      for (int r = 0; r < 6; ++r) {
        double s = 0.0;
        for (int c = 0; c < 6; ++c) s += m[r][c] * in[c];
        CHECK(f.at(r, 6, 2) == doctest::Approx(s).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("potential_x touches only its targets") {
  const auto g = LatticeGeometry::make(16, 8);
  DielectricMap m(g);
  set_halfspace_dielectric(m, {Axis::X, 0.5, 1.0, 2.0, 0.0});
  const auto beta = compute_potential_angles(m, 0.5, Axis::X);
  const QubitField u = random_field(g, 12);
  QubitField f = u;
  potential_x(f, beta);
  for (int c : {0, 1, 2, 3}) CHECK(f.comp(c) == u.comp(c));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const bool near = i == 7 || i == 8 || i == 15 || i == 0;
      if (!near) {
        CHECK(f.at(4, i, j) == u.at(4, i, j));
        CHECK(f.at(5, i, j) == u.at(5, i, j));
      } else {
        CHECK(f.at(4, i, j) != u.at(4, i, j));
        CHECK(f.at(5, i, j) != u.at(5, i, j));
      }
    }
  }
}

TEST_CASE("collision angles") {
  const auto g = LatticeGeometry::make(8, 8);
  DielectricMap m(g, 1.0);
  SUBCASE("eps 0.1 in vacuum") {
    const auto a = compute_collision_angles(m, 0.1, Axis::Y);
    for (int p = 0; p < 2; ++p) {
      for (double t : a.theta[p]) CHECK(t == doctest::Approx(0.025).epsilon(1e-15));
    }
  }
  SUBCASE("large index shrinks the angle") {
    m.set_uniform(1e12);
    const auto a = compute_collision_angles(m, 0.5, Axis::X);
    for (double t : a.theta[0]) CHECK(t < 1e-12);
  }
  SUBCASE("eps 0 gives identity collisions") {
    const auto a = compute_collision_angles(m, 0.0, Axis::X);
    const QubitField u = random_field(g, 13);
    QubitField f = u;
    collide_x(f, a, +1);
    CHECK(max_diff(f, u) == 0.0);
  }
  SUBCASE("index component per pair") {
    std::array<std::vector<double>, 3> n;
    n[0].assign(g.sites(), 1.0);
    n[1].assign(g.sites(), 2.0);
    n[2].assign(g.sites(), 4.0);
    m.set_components(n);
    const auto y = compute_collision_angles(m, 0.4, Axis::Y);
    const auto x = compute_collision_angles(m, 0.4, Axis::X);
    CHECK(y.theta[0][0] == doctest::Approx(0.1));
    CHECK(y.theta[1][0] == doctest::Approx(0.025));
    CHECK(x.theta[0][0] == doctest::Approx(0.05));
    CHECK(x.theta[1][0] == doctest::Approx(0.025));
  }
  SUBCASE("cos and sin are norm-preserving") {
    for (double n : {0.5, 1.0, 1.5, 2.0, 3.7}) {
      m.set_uniform(n);
      for (double eps : {0.05, 0.25, 0.5}) {
        const auto a = compute_collision_angles(m, eps, Axis::Y);
        const double c = a.cos[0][0];
        const double s = a.sin[0][0];
        CHECK(std::fabs(std::fma(c, c, -1.0) + s * s) < 1e-17);
        CHECK(std::fabs(std::atan2(s, c) - a.theta[0][0]) < 1e-13);
      }
    }
  }
  SUBCASE("eps range") {
    CHECK_THROWS_AS(compute_collision_angles(m, 0.6, Axis::X), std::invalid_argument);
    CHECK_THROWS_AS(validate_epsilon(0.0), std::invalid_argument);
    CHECK_NOTHROW(validate_epsilon(0.5));
  }
}

TEST_CASE("displaced angles follow the a amplitude") {
  const auto g = LatticeGeometry::make(8, 8);
  DielectricMap m(g);
  set_halfspace_dielectric(m, {Axis::Y, 0.5, 1.0, 2.0, 0.0});
  const auto local = compute_collision_angles(m, 0.5, Axis::Y);
  // set A holds q0 (pair 0's a), set B holds q2 (pair 1's a)
  const auto da = displaced_angles(local, StreamSet::A, -1);
  CHECK(da.theta[1] == local.theta[1]);
  CHECK(da.theta[0][g.index(0, 3)] == local.theta[0][g.index(0, 4)]);
  const auto db = displaced_angles(local, StreamSet::B, +1);
  CHECK(db.theta[0] == local.theta[0]);
  CHECK(db.theta[1][g.index(0, 4)] == local.theta[1][g.index(0, 3)]);
}

TEST_CASE("potential angles") {
  const auto g = LatticeGeometry::make(16, 8);
  SUBCASE("homogeneous medium") {
    DielectricMap m(g, 3.0);
    for (Axis ax : {Axis::X, Axis::Y}) {
      const auto b = compute_potential_angles(m, 0.5, ax);
      for (int p = 0; p < 2; ++p) {
        for (double v : b.beta[p]) CHECK(v == 0.0);
      }
    }
  }
  SUBCASE("sharp interface is local and flips with direction") {
    DielectricMap fwd(g), rev(g);
    set_halfspace_dielectric(fwd, {Axis::X, 0.5, 1.0, 2.0, 0.0});
    set_halfspace_dielectric(rev, {Axis::X, 0.5, 2.0, 1.0, 0.0});
    const auto bf = compute_potential_angles(fwd, 0.4, Axis::X);
    const auto br = compute_potential_angles(rev, 0.4, Axis::X);
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t k = g.index(i, j);
        const bool near = i == 7 || i == 8 || i == 15 || i == 0;
        for (int p = 0; p < 2; ++p) {
          if (near) {
            CHECK(bf.beta[p][k] != 0.0);
            CHECK(br.beta[p][k] == -bf.beta[p][k]);
          } else {
            CHECK(bf.beta[p][k] == 0.0);
          }
        }
      }
    }
    CHECK(bf.beta[0][g.index(7, 0)] == doctest::Approx(0.1 * (0.5 - 1.0)));
    const auto scaled_beta = compute_potential_angles(fwd, 0.4, Axis::X, 0.5);
    CHECK(scaled_beta.beta[0][g.index(7, 0)] == doctest::Approx(0.05 * (0.5 - 1.0)));
    // y angles see no x interface
    const auto by = compute_potential_angles(fwd, 0.4, Axis::Y);
    for (double v : by.beta[1]) CHECK(v == 0.0);
  }
}
