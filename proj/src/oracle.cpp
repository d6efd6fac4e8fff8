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

#include "qla/oracle.hpp"

#include <cmath>
#include <numbers>

namespace qla::oracle {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Exact wherever the sine is 0, +-1/2 or +-1, so that a problem sitting
// exactly on the critical angle is recognised as such.
double sin_deg(double d) {
  const double r = std::fmod(d, 360.0);
  if (std::fmod(r, 30.0) == 0.0) {
    const int k = (static_cast<int>(r / 30.0) + 12) % 12;
    constexpr double kExact[12] = {0.0, 0.5, -2.0, 1.0, -2.0, 0.5, 0.0, -0.5, -2.0, -1.0, -2.0, -0.5};
    if (kExact[k] != -2.0) return kExact[k];
  }
  return std::sin(d * kDeg);
}

}  // namespace

void InterfaceProblem::validate() const {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw std::invalid_argument("refractive indices must be positive");
  if (!(theta_inc >= 0.0 && theta_inc < 90.0)) throw std::invalid_argument("theta_inc must lie in [0, 90)");
}

std::optional<double> snell_angle(const InterfaceProblem& p) {
  p.validate();
  const double arg = p.n1 * sin_deg(p.theta_inc) / p.n2;
  if (arg > 1.0) return std::nullopt;
  return std::asin(arg) / kDeg;
}

std::optional<double> critical_angle(double n1, double n2) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw std::invalid_argument("refractive indices must be positive");
  if (!(n1 > n2)) return std::nullopt;
  return std::asin(n2 / n1) / kDeg;
}

FresnelCoefficients fresnel_p(const InterfaceProblem& p) {
  p.validate();
  const double si = sin_deg(p.theta_inc);
  const double st = p.n1 * si / p.n2;
  if (st > 1.0) throw EvanescentError("incidence beyond the critical angle");
  const double ci = std::cos(p.theta_inc * kDeg);
  const double ct = std::sqrt(1.0 - st * st);
  const double den = p.n2 * ci + p.n1 * ct;
  FresnelCoefficients f{};
  f.r_amp = (p.n2 * ci - p.n1 * ct) / den;
  f.t_amp = 2.0 * p.n2 * ci / den;
  f.R = f.r_amp * f.r_amp;
  f.T = (p.n1 * ct) / (p.n2 * ci) * f.t_amp * f.t_amp;
  return f;
}

double brewster_angle(double n1, double n2) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw std::invalid_argument("refractive indices must be positive");
  return std::atan(n2 / n1) / kDeg;
}

double wavelength_ratio(double n1, double n2) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw std::invalid_argument("refractive indices must be positive");
  return n1 / n2;
}

double plane_wave_phase(double n, double wavelength, long steps, double eps) {
  if (!(n > 0.0) || !(wavelength > 0.0) || !(eps > 0.0) || steps < 0) {
    throw std::invalid_argument("plane_wave_phase needs positive inputs");
  }
  return 2.0 * std::numbers::pi * static_cast<double>(steps) * eps / (n * wavelength);
}

}  // namespace qla::oracle
