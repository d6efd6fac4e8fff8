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

#include "doctest.h"
#include "qla/oracle.hpp"

using namespace qla::oracle;

// Reference values evaluated at 30 digits, independently of this code.
namespace ref {
constexpr double kSnell_1_2_25 = 12.1990816904488086;
constexpr double kSnell_2_1_25 = 57.6972862718961967;
constexpr double kR_1_2_25 = 0.0896102849468930603;
constexpr double kT_1_2_25 = 0.910389715053106940;
constexpr double kRamp_1_2_25 = 0.299349770246935483;
constexpr double kR_2_1_25 = 0.00676719624587591721;
constexpr double kRamp_2_1_25 = -0.0822629700769180666;
constexpr double kBrewster_1_2 = 63.4349488229220106;
}  // namespace ref

TEST_CASE("snell angle") {
  CHECK(*snell_angle({1.0, 2.0, 25.0}) == doctest::Approx(ref::kSnell_1_2_25).epsilon(1e-14));
  CHECK(*snell_angle({2.0, 1.0, 25.0}) == doctest::Approx(ref::kSnell_2_1_25).epsilon(1e-14));
  CHECK(*snell_angle({2.0, 1.0, 30.0}) == 90.0);
  CHECK_FALSE(snell_angle({2.0, 1.0, 35.0}).has_value());
  for (double n1 : {0.5, 1.0, 3.0}) {
    CHECK(*snell_angle({n1, 1.7, 0.0}) == 0.0);
  }
}

TEST_CASE("snell angle is monotone below critical") {
  double prev = -1.0;
  for (double th = 0.0; th < 30.0; th += 0.25) {
    const double t = *snell_angle({2.0, 1.0, th});
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("critical angle") {
  CHECK(*critical_angle(2.0, 1.0) == doctest::Approx(30.0).epsilon(1e-14));
  CHECK_FALSE(critical_angle(1.0, 2.0).has_value());
  CHECK_FALSE(critical_angle(1.0, 1.0).has_value());
  CHECK_THROWS_AS(critical_angle(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("fresnel p coefficients") {
  SUBCASE("normal incidence into glass") {
    const auto f = fresnel_p({1.0, 2.0, 0.0});
    CHECK(f.R == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(f.T == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  }
  SUBCASE("no interface") {
    for (double th : {0.0, 20.0, 60.0, 89.0}) {
      const auto f = fresnel_p({1.0, 1.0, th});
      CHECK(std::fabs(f.R) <= 1e-15);
      CHECK(f.T == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("oblique, both directions") {
    const auto a = fresnel_p({1.0, 2.0, 25.0});
    CHECK(a.R == doctest::Approx(ref::kR_1_2_25).epsilon(1e-13));
    CHECK(a.T == doctest::Approx(ref::kT_1_2_25).epsilon(1e-13));
    CHECK(a.r_amp == doctest::Approx(ref::kRamp_1_2_25).epsilon(1e-13));
    CHECK(std::fabs(a.R + a.T - 1.0) <= 1e-12);
    const auto b = fresnel_p({2.0, 1.0, 25.0});
    CHECK(b.R == doctest::Approx(ref::kR_2_1_25).epsilon(1e-12));
    CHECK(b.r_amp == doctest::Approx(ref::kRamp_2_1_25).epsilon(1e-12));
  }
  SUBCASE("energy balance over a sweep") {
    for (double n2 : {0.4, 0.8, 1.3, 2.0, 3.5}) {
      for (double th = 0.0; th < 89.0; th += 1.0) {
        InterfaceProblem p{1.0, n2, th};
        if (!snell_angle(p)) continue;
        const auto f = fresnel_p(p);
        CHECK(std::fabs(f.R + f.T - 1.0) <= 1e-12);
      }
    }
  }
  SUBCASE("beyond critical") { CHECK_THROWS_AS(fresnel_p({2.0, 1.0, 35.0}), EvanescentError); }
}

TEST_CASE("brewster angle zeroes the p reflection") {
  CHECK(brewster_angle(1.0, 2.0) == doctest::Approx(ref::kBrewster_1_2).epsilon(1e-14));
  for (auto [n1, n2] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {1.0, 1.5}, {1.33, 1.0}}) {
    CHECK(fresnel_p({n1, n2, brewster_angle(n1, n2)}).R <= 1e-12);
  }
}

TEST_CASE("wavelength ratio") {
  CHECK(wavelength_ratio(1.0, 2.0) == 0.5);
  CHECK(wavelength_ratio(2.0, 1.0) == 2.0);
  CHECK(wavelength_ratio(1.7, 1.7) == 1.0);
}

TEST_CASE("plane wave phase") {
  CHECK(plane_wave_phase(1.0, 20.0, 0, 0.25) == 0.0);
  CHECK(plane_wave_phase(1.0, 20.0, 200, 0.25) == doctest::Approx(2.0 * plane_wave_phase(1.0, 20.0, 100, 0.25)));
  CHECK(plane_wave_phase(2.0, 20.0, 100, 0.25) == doctest::Approx(0.5 * plane_wave_phase(1.0, 20.0, 100, 0.25)));
  // 80 steps at 0.25 sites per step is one wavelength of 20 sites.
  CHECK(plane_wave_phase(1.0, 20.0, 80, 0.25) == doctest::Approx(2.0 * M_PI));
  CHECK_THROWS_AS(plane_wave_phase(0.0, 20.0, 1, 0.25), std::invalid_argument);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(snell_angle({-1.0, 2.0, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS(snell_angle({1.0, 2.0, 90.0}), std::invalid_argument);
}
