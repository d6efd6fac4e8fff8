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

#include "qla/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "qla/diagnostics.hpp"
#include "qla/parallel.hpp"

namespace qla {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Images further than this many widths away contribute below 1e-21.
constexpr double kImageCut = 7.0;

struct Sampler {
  const LatticeGeometry& g;
  const PulseSpec& p;
  bool centered;
  double c, s, cut, x0, y0;
  int ix, iy;

  Sampler(const LatticeGeometry& geom, const PulseSpec& spec, bool centered_carrier)
      : g(geom), p(spec), centered(centered_carrier) {
    c = std::cos(spec.theta_inc * kDeg);
    s = std::sin(spec.theta_inc * kDeg);
    cut = kImageCut * std::max(spec.zeta_w, spec.chi_w);
    ix = static_cast<int>(std::ceil(cut / geom.nx)) + 1;
    iy = static_cast<int>(std::ceil(cut / geom.ny)) + 1;
    std::tie(x0, y0) = rotate_to_lab(spec.zeta0, spec.chi0, spec.theta_inc);
  }

  // Returns envelope and H_z at (x, y), both summed over periodic images.
  std::pair<double, double> eval(double x, double y) const {
    double env = 0.0, hz = 0.0;
    for (int a = -ix; a <= ix; ++a) {
      const double xs = x - a * g.nx;
      if (std::abs(xs - x0) > cut) continue;
      for (int b = -iy; b <= iy; ++b) {
        const double ys = y - b * g.ny;
        if (std::abs(ys - y0) > cut) continue;
        const double zeta = c * xs - s * ys;
        const double chi = s * xs + c * ys;
        const double dz = (zeta - p.zeta0) / p.zeta_w;
        const double dc = (chi - p.chi0) / p.chi_w;
        const double e = std::exp(-dz * dz - dc * dc);
        const double phase = centered ? zeta - p.zeta0 : zeta;
        env += e;
        hz += -p.amplitude * e * std::cos(2.0 * std::numbers::pi * phase / p.gamma_w);
      }
    }
    return {env, hz};
  }
};

}  // namespace

void PulseSpec::validate() const {
  if (!(zeta_w > 0.0)) throw PulseError("zeta_w must be positive");
  if (!(chi_w > 0.0)) throw PulseError("chi_w must be positive");
  if (!(gamma_w > 0.0)) throw PulseError("gamma_w must be positive");
  if (!(theta_inc >= 0.0 && theta_inc < 90.0)) throw PulseError("theta_inc must lie in [0, 90)");
  if (!std::isfinite(amplitude)) throw PulseError("amplitude must be finite");
  if (!std::isfinite(zeta0) || !std::isfinite(chi0)) throw PulseError("packet centre must be finite");
}

const std::vector<ScenarioPreset>& scenario_presets() {
  static const std::vector<ScenarioPreset> presets{
      {"burst", 20.0, 100.0, 20.0},
      {"thin_long", 100.0, 20.0, 20.0},
      {"finite", 50.0, 50.0, 20.0},
  };
  return presets;
}

const ScenarioPreset& find_preset(const std::string& name) {
  for (const auto& p : scenario_presets()) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("unknown pulse preset '" + name + "'");
}

std::pair<double, double> rotate_to_lab(double zeta, double chi, double theta_deg) {
  const double c = std::cos(theta_deg * kDeg);
  const double s = std::sin(theta_deg * kDeg);
  return {c * zeta + s * chi, -s * zeta + c * chi};
}

std::pair<double, double> rotate_to_frame(double x, double y, double theta_deg) {
  const double c = std::cos(theta_deg * kDeg);
  const double s = std::sin(theta_deg * kDeg);
  return {c * x - s * y, s * x + c * y};
}

double pulse_envelope(const LatticeGeometry& geom, const PulseSpec& spec, double x, double y) {
  return Sampler(geom, spec, false).eval(x, y).first;
}

QubitField init_pulse(const LatticeGeometry& geom, const DielectricMap& map, const PulseSpec& spec,
                      const PulseOptions& opts) {
  spec.validate();
  if (!(geom == map.geometry())) throw LatticeError("lattice and dielectric map shapes differ");
  const auto [x0, y0] = rotate_to_lab(spec.zeta0, spec.chi0, spec.theta_inc);
  if (!(x0 >= 0.0 && x0 < geom.nx && y0 >= 0.0 && y0 < geom.ny)) {
    throw PulseError("packet centre lies outside the lattice");
  }
  const std::size_t kc = geom.index(static_cast<int>(std::floor(x0)), static_cast<int>(std::floor(y0)));
  // Impedance 1/n of the medium holding the packet centre.
  const double n1 = map.n(1)[kc];

  const Sampler smp(geom, spec, opts.centered_carrier);
  const double c = smp.c;
  const double s = smp.s;
  const double hx_off = opts.staggered_sampling ? 0.5 : 0.0;
  const double hy_off = opts.staggered_sampling ? -0.5 : 0.0;

  QubitField f(geom);
  double worst_overlap = 0.0;
  for (int j = 0; j < geom.ny; ++j) {
    for (int i = 0; i < geom.nx; ++i) {
      const std::size_t k = geom.index(i, j);
      const auto [env, hz] = smp.eval(i, j);
      const bool foreign = map.n(0)[k] != map.n(0)[kc] || map.n(1)[k] != map.n(1)[kc] || map.n(2)[k] != map.n(2)[kc];
      if (foreign) worst_overlap = std::max(worst_overlap, env);
      f.comp(5)[k] = hz;
      // E_x from the sample at (i, j - 1/2), E_y from (i + 1/2, j).
      const double hz_for_ex = smp.eval(i, j + hy_off).second;
      const double hz_for_ey = smp.eval(i + hx_off, j).second;
      f.comp(0)[k] = map.n(0)[k] * s * hz_for_ex / n1;
      f.comp(1)[k] = map.n(1)[k] * c * hz_for_ey / n1;
    }
  }
  if (worst_overlap > opts.overlap_tolerance) {
    throw PulseError("pulse overlaps the interface: envelope " + std::to_string(worst_overlap) +
                     " of peak outside medium 1");
  }
  return f;
}

std::array<double, 2> pulse_poynting_direction(const QubitField& field, const DielectricMap& map) {
  const PoyntingField p = poynting_field(field, map);
  const double sx = tree_sum(p.sx);
  const double sy = tree_sum(p.sy);
  const double norm = std::hypot(sx, sy);
  if (!(norm > 0.0)) throw std::runtime_error("zero Poynting flux");
  return {sx / norm, sy / norm};
}

PulseSpec centered_pulse(const LatticeGeometry& geom, const HalfspaceSpec& halfspace, double zeta_w, double chi_w,
                         double gamma_w, double theta_inc, double amplitude) {
  const int split = split_site(geom, halfspace);
  double x0, y0;
  if (halfspace.axis == Axis::X) {
    x0 = 0.5 * split;
    y0 = 0.5 * geom.ny;
  } else {
    x0 = 0.5 * geom.nx;
    y0 = 0.5 * split;
  }
  PulseSpec p;
  std::tie(p.zeta0, p.chi0) = rotate_to_frame(x0, y0, theta_inc);
  p.zeta_w = zeta_w;
  p.chi_w = chi_w;
  p.gamma_w = gamma_w;
  p.theta_inc = theta_inc;
  p.amplitude = amplitude;
  return p;
}

}  // namespace qla
