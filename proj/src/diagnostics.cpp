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

#include "qla/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qla {

namespace {

template <class RowFn>
double row_tree_sum(const LatticeGeometry& g, WorkerPool* pool, RowFn&& row_sum) {
  std::vector<double> rows(static_cast<std::size_t>(g.ny));
  auto body = [&](int b, int e) {
    for (int j = b; j < e; ++j) rows[static_cast<std::size_t>(j)] = row_sum(j);
  };
  if (pool) {
    pool->parallel_for(g.ny, body);
  } else {
    body(0, g.ny);
  }
  return tree_sum(rows);
}

double site_energy(const QubitField& f, std::size_t k) {
  double s = 0.0;
  for (int c = 0; c < kComponents; ++c) {
    const double v = f.comp(c)[k];
    s += v * v;
  }
  return s;
}

}  // namespace

RegionMask full_mask(const LatticeGeometry& geom) { return RegionMask(geom.sites(), 1); }
RegionMask empty_mask(const LatticeGeometry& geom) { return RegionMask(geom.sites(), 0); }

RegionMask complement(const RegionMask& mask) {
  RegionMask out(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) out[k] = mask[k] ? 0 : 1;
  return out;
}

RegionMask halfspace_region(const LatticeGeometry& geom, const HalfspaceSpec& spec, int region) {
  if (region != 1 && region != 2) throw std::invalid_argument("region must be 1 or 2");
  const int split = split_site(geom, spec);
  RegionMask m(geom.sites());
  for (int j = 0; j < geom.ny; ++j) {
    for (int i = 0; i < geom.nx; ++i) {
      const int s = spec.axis == Axis::X ? i : j;
      const bool left = s < split;
      m[geom.index(i, j)] = (region == 1) == left ? 1 : 0;
    }
  }
  return m;
}

double total_energy(const QubitField& field, WorkerPool* pool) {
  const auto& g = field.geometry();
  return row_tree_sum(g, pool, [&](int j) {
    double s = 0.0;
    const std::size_t base = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx);
    for (int i = 0; i < g.nx; ++i) s += site_energy(field, base + static_cast<std::size_t>(i));
    return s;
  });
}

double region_energy(const QubitField& field, const RegionMask& mask, WorkerPool* pool) {
  const auto& g = field.geometry();
  if (mask.size() != g.sites()) throw std::invalid_argument("mask shape does not match the field");
  return row_tree_sum(g, pool, [&](int j) {
    double s = 0.0;
    const std::size_t base = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx);
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = base + static_cast<std::size_t>(i);
      if (mask[k]) s += site_energy(field, k);
    }
    return s;
  });
}

DivergenceMetrics divergence_metrics(const QubitField& field, const DielectricMap& map) {
  const auto& g = field.geometry();
  if (!(g == map.geometry())) throw LatticeError("field and dielectric map shapes differ");
  DivergenceMetrics m;
  double div_e_max = 0.0;
  double e_max = 0.0;
  const auto& q0 = field.comp(0);
  const auto& q1 = field.comp(1);
  const auto& q2 = field.comp(2);
  const auto& hx = field.comp(3);
  const auto& hy = field.comp(4);
  const auto& nx = map.n(0);
  const auto& ny = map.n(1);
  const auto& nz = map.n(2);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const std::size_t xp = g.index(i + 1, j), xm = g.index(i - 1, j);
      const std::size_t yp = g.index(i, j + 1), ym = g.index(i, j - 1);
      const double dh = 0.5 * (hx[xp] - hx[xm]) + 0.5 * (hy[yp] - hy[ym]);
      const double de = 0.5 * (nx[xp] * q0[xp] - nx[xm] * q0[xm]) + 0.5 * (ny[yp] * q1[yp] - ny[ym] * q1[ym]);
      m.div_h_max = std::max(m.div_h_max, std::abs(dh));
      div_e_max = std::max(div_e_max, std::abs(de));
      const double ex = q0[k] / nx[k], ey = q1[k] / ny[k], ez = q2[k] / nz[k];
      e_max = std::max(e_max, std::sqrt(ex * ex + ey * ey + ez * ez));
    }
  }
  m.div_e_rel = e_max > 0.0 ? div_e_max / e_max : 0.0;
  return m;
}

PoyntingField poynting_field(const QubitField& field, const DielectricMap& map) {
  const auto& g = field.geometry();
  if (!(g == map.geometry())) throw LatticeError("field and dielectric map shapes differ");
  PoyntingField p;
  p.sx.resize(g.sites());
  p.sy.resize(g.sites());
  auto e = [&](int c, std::size_t k) { return field.comp(c)[k] / map.n(c)[k]; };
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const std::size_t xm = g.index(i - 1, j);
      const std::size_t yp = g.index(i, j + 1);
      // q1, q4 sit half a site up in x; q0, q3 half a site down in y.
      const double ey = 0.5 * (e(1, xm) + e(1, k));
      const double hy = 0.5 * (field.comp(4)[xm] + field.comp(4)[k]);
      const double ex = 0.5 * (e(0, k) + e(0, yp));
      const double hx = 0.5 * (field.comp(3)[k] + field.comp(3)[yp]);
      const double ez = e(2, k);
      const double hz = field.comp(5)[k];
      p.sx[k] = ey * hz - ez * hy;
      p.sy[k] = ez * hx - ex * hz;
    }
  }
  return p;
}

Centroid energy_centroid(const QubitField& field, const RegionMask& mask) {
  return energy_centroid_periodic(field, mask, false, false);
}

Centroid energy_centroid_periodic(const QubitField& field, const RegionMask& mask, bool periodic_x,
                                  bool periodic_y) {
  const auto& g = field.geometry();
  if (mask.size() != g.sites()) throw std::invalid_argument("mask shape does not match the field");
  // Per row: weight, x moments, y moments (linear or circular).
  std::vector<double> w(static_cast<std::size_t>(g.ny)), mx(w.size()), my(w.size()), cxs(w.size()), cys(w.size());
  const double kx = 2.0 * std::numbers::pi / g.nx;
  const double ky = 2.0 * std::numbers::pi / g.ny;
  for (int j = 0; j < g.ny; ++j) {
    double sw = 0.0, sx = 0.0, sy = 0.0, scx = 0.0, scy = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!mask[k]) continue;
      const double e = site_energy(field, k);
      sw += e;
      if (periodic_x) {
        sx += e * std::cos(kx * i);
        scx += e * std::sin(kx * i);
      } else {
        sx += e * i;
      }
      if (periodic_y) {
        sy += e * std::cos(ky * j);
        scy += e * std::sin(ky * j);
      } else {
        sy += e * j;
      }
    }
    const auto r = static_cast<std::size_t>(j);
    w[r] = sw;
    mx[r] = sx;
    my[r] = sy;
    cxs[r] = scx;
    cys[r] = scy;
  }
  const double W = tree_sum(w);
  if (!(W > 0.0)) throw EmptyRegionError("centroid of a region with zero energy");
  Centroid c{};
  if (periodic_x) {
    double a = std::atan2(tree_sum(cxs), tree_sum(mx));
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    c.x = a / kx;
    if (c.x >= g.nx) c.x = 0.0;
  } else {
    c.x = tree_sum(mx) / W;
  }
  if (periodic_y) {
    double a = std::atan2(tree_sum(cys), tree_sum(my));
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    c.y = a / ky;
    if (c.y >= g.ny) c.y = 0.0;
  } else {
    c.y = tree_sum(my) / W;
  }
  return c;
}

void EnergyLedger::append(const LedgerRow& row) {
  if (!rows_.empty() && row.t <= rows_.back().t) {
    throw std::invalid_argument("ledger rows must have strictly increasing t");
  }
  rows_.push_back(row);
}

std::string EnergyLedger::format_row(const LedgerRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.t, r.e_total, r.e_region1,
                r.e_region2, r.div_h_max, r.div_e_rel, r.cx, r.cy);
  return buf;
}

std::string EnergyLedger::to_csv() const {
  std::string out = kHeader;
  out += '\n';
  for (const auto& r : rows_) {
    out += format_row(r);
    out += '\n';
  }
  return out;
}

double EnergyLedger::max_relative_drift() const {
  double d = 0.0;
  if (rows_.empty()) return d;
  const double e0 = rows_.front().e_total;
  for (const auto& r : rows_) d = std::max(d, std::abs(r.e_total / e0 - 1.0));
  return d;
}

LedgerRow measure(long t, const QubitField& field, const DielectricMap& map, const RegionMask& region1,
                  WorkerPool* pool) {
  LedgerRow row;
  row.t = t;
  row.e_region1 = region_energy(field, region1, pool);
  row.e_region2 = region_energy(field, complement(region1), pool);
  row.e_total = row.e_region1 + row.e_region2;
  const auto dm = divergence_metrics(field, map);
  row.div_h_max = dm.div_h_max;
  row.div_e_rel = dm.div_e_rel;
  if (row.e_total > 0.0) {
    const auto c = energy_centroid(field, full_mask(field.geometry()));
    row.cx = c.x;
    row.cy = c.y;
  }
  return row;
}

std::vector<double> sample_line(const LatticeGeometry& geom, const std::vector<double>& values, Centroid origin,
                                std::array<double, 2> direction, double half_length, double spacing) {
  if (values.size() != geom.sites()) throw std::invalid_argument("values do not match the lattice");
  const double norm = std::hypot(direction[0], direction[1]);
  if (!(norm > 0.0)) throw std::invalid_argument("direction must be nonzero");
  if (!(spacing > 0.0) || !(half_length >= 0.0)) throw std::invalid_argument("bad sampling parameters");
  const double ux = direction[0] / norm;
  const double uy = direction[1] / norm;
  const long count = 2 * std::lround(half_length / spacing) + 1;
  const double s0 = -spacing * static_cast<double>(count / 2);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    const double s = s0 + spacing * static_cast<double>(k);
    const double x = origin.x + s * ux;
    const double y = origin.y + s * uy;
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double ax = x - fx;
    const double ay = y - fy;
    const int i = static_cast<int>(fx);
    const int j = static_cast<int>(fy);
    out[static_cast<std::size_t>(k)] = (1 - ax) * (1 - ay) * values[geom.index(i, j)] +
                                       ax * (1 - ay) * values[geom.index(i + 1, j)] +
                                       (1 - ax) * ay * values[geom.index(i, j + 1)] +
                                       ax * ay * values[geom.index(i + 1, j + 1)];
  }
  return out;
}

double zero_crossing_wavelength(const std::vector<double>& trace, double spacing, double rel_threshold) {
  double peak = 0.0;
  for (double v : trace) peak = std::max(peak, std::fabs(v));
  if (!(peak > 0.0)) throw std::invalid_argument("trace is identically zero");
  const double cut = rel_threshold * peak;
  std::size_t first = trace.size();
  std::size_t last = 0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (std::fabs(trace[k]) >= cut) {
      first = std::min(first, k);
      last = k;
    }
  }
  std::vector<double> crossings;
  for (std::size_t k = first; k < last; ++k) {
    const double a = trace[k];
    const double b = trace[k + 1];
    if ((a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0)) {
      crossings.push_back((static_cast<double>(k) + a / (a - b)) * spacing);
    }
  }
  if (crossings.size() < 2) throw std::invalid_argument("fewer than two zero crossings");
  return 2.0 * (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

}  // namespace qla
