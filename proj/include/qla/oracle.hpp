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

#include <optional>
#include <stdexcept>

// Closed-form references for a planar interface between two lossless
// dielectrics. Nothing here knows about the lattice.
namespace qla::oracle {

struct InterfaceProblem {
  double n1 = 1.0;
  double n2 = 1.0;
  double theta_inc = 0.0;  // degrees, [0, 90)

  void validate() const;
};

class EvanescentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Refraction angle in degrees, or nullopt beyond the critical angle.
std::optional<double> snell_angle(const InterfaceProblem& p);

// asin(n2 / n1) in degrees when n1 > n2, otherwise nullopt.
std::optional<double> critical_angle(double n1, double n2);

// p-polarisation coefficients for the H amplitude:
//   r = (n2 cos i - n1 cos t) / (n2 cos i + n1 cos t)
//   t = 2 n2 cos i / (n2 cos i + n1 cos t)
// with R = r^2 and T = (n1 cos t) / (n2 cos i) t^2.
struct FresnelCoefficients {
  double r_amp;
  double t_amp;
  double R;
  double T;
};
FresnelCoefficients fresnel_p(const InterfaceProblem& p);

double brewster_angle(double n1, double n2);

// lambda2 / lambda1 at fixed frequency.
double wavelength_ratio(double n1, double n2);

// Phase advance of a plane wave moving eps / n sites per step.
double plane_wave_phase(double n, double wavelength, long steps, double eps);

}  // namespace qla::oracle
