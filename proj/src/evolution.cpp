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

#include "qla/evolution.hpp"

#include <algorithm>
#include <cmath>

namespace qla {

namespace {

// Same arithmetic as rotate_pair, element by element.
void rotate_rows(double* __restrict a, double* __restrict b, const double* __restrict c,
                 const double* __restrict s, double sign, int n) {
  for (int i = 0; i < n; ++i) {
    const double sn = sign * s[i];
    const double av = a[i];
    const double bv = b[i];
    a[i] = c[i] * av - sn * bv;
    b[i] = sn * av + c[i] * bv;
  }
}

// y tiles: kBand output rows by kTileW columns, plus a halo above and below.
constexpr int kBand = 64;
constexpr int kTileW = 128;

bool a_streamed(Axis axis, StreamSet set, const CouplingPair& p) {
  const auto c = stream_components(axis, set);
  return c[0] == p.a || c[1] == p.a;
}

}  // namespace

int EvolutionSchedule::unitary_count() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                        [](const ScheduleEntry& e) { return e.kind != OpKind::Potential; }));
}

int EvolutionSchedule::potential_count() const {
  return static_cast<int>(entries.size()) - unitary_count();
}

EvolutionSchedule build_schedule(double eps, bool first_order) {
  validate_epsilon(eps);
  EvolutionSchedule s;
  s.first_order = first_order;
  for (Axis axis : {Axis::X, Axis::Y}) {
    for (StreamSet set : {StreamSet::A, StreamSet::B}) {
      const int f = first_shift(set);
      const ScheduleEntry c_loc{OpKind::Collide, axis, set, -1, 0, AngleFrame::Local};
      const ScheduleEntry c_disp{OpKind::Collide, axis, set, +1, f, AngleFrame::Displaced};
      const ScheduleEntry s_fwd{OpKind::Stream, axis, set, +1, f, AngleFrame::Local};
      const ScheduleEntry s_back{OpKind::Stream, axis, set, +1, -f, AngleFrame::Local};
      s.entries.insert(s.entries.end(), {c_loc, s_fwd, c_disp, s_back});
      if (!first_order) s.entries.insert(s.entries.end(), {s_fwd, c_disp, s_back, c_loc});
    }
  }
  s.entries.push_back({OpKind::Potential, Axis::X, StreamSet::A, +1, 0, AngleFrame::Local});
  s.entries.push_back({OpKind::Potential, Axis::Y, StreamSet::A, +1, 0, AngleFrame::Local});
  return s;
}

struct Evolver::Kernel {
  enum Type { Pointwise, Shifted } type;
  StreamSet set;
  int shift;
  double sign;
};

struct PotSite {
  std::size_t k;
  int pair;
  double c;
  double s;
};

struct Evolver::Group {
  enum Type { Unitary, Potential, Literal } type;
  Axis axis;
  std::vector<Kernel> kernels;
  ScheduleEntry entry;
  std::vector<PotSite> sites;
};

Evolver::Evolver(const DielectricMap& map, const EvolutionOptions& opts)
    : geom_(map.geometry()), opts_(opts), schedule_(build_schedule(opts.eps, opts.first_order)) {
  local_x_ = compute_collision_angles(map, opts.eps, Axis::X);
  local_y_ = compute_collision_angles(map, opts.eps, Axis::Y);
  pot_x_ = compute_potential_angles(map, opts.eps, Axis::X, opts.potential_coupling);
  pot_y_ = compute_potential_angles(map, opts.eps, Axis::Y, opts.potential_coupling);
  pool_ = std::make_unique<WorkerPool>(opts.workers);
  compile();
}

Evolver::~Evolver() = default;

RunState Evolver::make_state(QubitField field) const {
  if (!(field.geometry() == geom_)) throw LatticeError("field shape does not match the dielectric map");
  RunState s;
  s.field = std::move(field);
  s.t = 0;
  s.schedule = schedule_;
  s.eps = opts_.eps;
  return s;
}

const CollisionAngles& Evolver::displaced(Axis axis, StreamSet set, int shift) const {
  const auto key = std::make_tuple(static_cast<int>(axis), static_cast<int>(set), shift);
  auto it = displaced_cache_.find(key);
  if (it == displaced_cache_.end()) {
    it = displaced_cache_.emplace(key, displaced_angles(axis == Axis::X ? local_x_ : local_y_, set, shift)).first;
  }
  return it->second;
}

void Evolver::compile() {
  const auto& e = schedule_.entries;
  auto unitary_group = [&](Axis axis) -> Group& {
    if (groups_.empty() || groups_.back().type != Group::Unitary || groups_.back().axis != axis) {
      groups_.push_back(Group{Group::Unitary, axis, {}, {}, {}});
    }
    return groups_.back();
  };
  for (std::size_t i = 0; i < e.size();) {
    const ScheduleEntry& cur = e[i];
    if (cur.kind == OpKind::Stream && i + 2 < e.size()) {
      const ScheduleEntry& mid = e[i + 1];
      const ScheduleEntry& back = e[i + 2];
      if (mid.kind == OpKind::Collide && mid.frame == AngleFrame::Displaced && mid.axis == cur.axis &&
          mid.set == cur.set && mid.shift == cur.shift && back.kind == OpKind::Stream && back.axis == cur.axis &&
          back.set == cur.set && back.shift == -cur.shift) {
        unitary_group(cur.axis).kernels.push_back({Kernel::Shifted, cur.set, cur.shift, mid.sign >= 0 ? 1.0 : -1.0});
        i += 3;
        continue;
      }
    }
    if (cur.kind == OpKind::Collide && cur.frame == AngleFrame::Local) {
      unitary_group(cur.axis).kernels.push_back({Kernel::Pointwise, cur.set, 0, cur.sign >= 0 ? 1.0 : -1.0});
    } else if (cur.kind == OpKind::Potential) {
      Group g{Group::Potential, cur.axis, {}, cur, {}};
      const PotentialAngles& pa = cur.axis == Axis::X ? pot_x_ : pot_y_;
      const auto& pairs = coupling_pairs(cur.axis);
      for (std::size_t k = 0; k < geom_.sites(); ++k) {
        for (int p = 0; p < 2; ++p) {
          const double beta = pa.beta[static_cast<std::size_t>(p)][k];
          if (beta == 0.0) continue;
          g.sites.push_back({k, p, std::cos(beta), pairs[static_cast<std::size_t>(p)].sign * std::sin(beta)});
        }
      }
      groups_.push_back(std::move(g));
    } else {
      groups_.push_back(Group{Group::Literal, cur.axis, {}, cur, {}});
    }
    ++i;
  }
}

std::size_t Evolver::potential_sites() const {
  std::size_t n = 0;
  for (const auto& g : groups_) {
    if (g.type == Group::Potential) n += g.sites.size();
  }
  return n;
}

void Evolver::run_group_x(QubitField& field, const Group& g, int j0, int j1) const {
  const int nx = geom_.nx;
  const auto& pairs = coupling_pairs(Axis::X);
  for (int j = j0; j < j1; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
    for (const Kernel& kn : g.kernels) {
      for (std::size_t p = 0; p < 2; ++p) {
        double* a = field.comp(pairs[p].a).data() + row;
        double* b = field.comp(pairs[p].b).data() + row;
        const double* c = local_x_.cos[p].data() + row;
        const double* s = local_x_.sin[p].data() + row;
        if (kn.type == Kernel::Pointwise) {
          rotate_rows(a, b, c, s, kn.sign, nx);
          continue;
        }
        // The streamed amplitude at i - shift meets its partner at i. Writing
        // that as offsets leaves one wrapped element per row.
        const bool sa = a_streamed(Axis::X, kn.set, pairs[p]);
        const int lo = (kn.shift == 1) == sa ? 0 : 1;  // offset of the a side
        const int hi = 1 - lo;                          // offset of the b side
        rotate_rows(a + lo, b + hi, c + lo, s + lo, kn.sign, nx - 1);
        const int wa = lo == 0 ? nx - 1 : 0;
        const int wb = lo == 0 ? 0 : nx - 1;
        rotate_pair(a[wa], b[wb], c[wa], kn.sign * s[wa]);
      }
    }
  }
}

void Evolver::run_tile_y(const QubitField& field, const Group& g, int tile, std::vector<double>& buf) {
  const int nx = geom_.nx;
  const int ny = geom_.ny;
  const int halo = static_cast<int>(std::count_if(g.kernels.begin(), g.kernels.end(),
                                                  [](const Kernel& k) { return k.type == Kernel::Shifted; }));
  const int cols = (nx + kTileW - 1) / kTileW;
  const int b0 = (tile / cols) * kBand;
  const int b1 = std::min(b0 + kBand, ny);
  const int c0 = (tile % cols) * kTileW;
  const int w = std::min(kTileW, nx - c0);
  const int rows = b1 - b0 + 2 * halo;
  const std::size_t plane = static_cast<std::size_t>(rows) * static_cast<std::size_t>(w);
  buf.resize(4 * plane);
  const auto& pairs = coupling_pairs(Axis::Y);
  const int comps[4] = {pairs[0].a, pairs[0].b, pairs[1].a, pairs[1].b};
  auto global_row = [&](int r) { return static_cast<std::size_t>(geom_.wrap_y(b0 - halo + r)) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(c0); };
  for (int q = 0; q < 4; ++q) {
    const double* src = field.comp(comps[q]).data();
    for (int r = 0; r < rows; ++r) {
      std::copy_n(src + global_row(r), w, buf.data() + static_cast<std::size_t>(q) * plane + static_cast<std::size_t>(r) * w);
    }
  }
  // The tile is a window onto the unrolled periodic lattice. Rows near its
  // edges pick up wrong values, but no more than one row per shifted kernel.
  for (const Kernel& kn : g.kernels) {
    for (std::size_t p = 0; p < 2; ++p) {
      double* a = buf.data() + (2 * p) * plane;
      double* b = buf.data() + (2 * p + 1) * plane;
      const double* c = local_y_.cos[p].data();
      const double* s = local_y_.sin[p].data();
      if (kn.type == Kernel::Pointwise) {
        for (int r = 0; r < rows; ++r) {
          const std::size_t o = static_cast<std::size_t>(r) * w;
          const std::size_t go = global_row(r);
          rotate_rows(a + o, b + o, c + go, s + go, kn.sign, w);
        }
        continue;
      }
      const bool sa = a_streamed(Axis::Y, kn.set, pairs[p]);
      const int r0 = std::max(0, kn.shift);
      const int r1 = std::min(rows, rows + kn.shift);
      for (int r = r0; r < r1; ++r) {
        // the streamed row r - shift meets the partner row r
        const int ra = sa ? r - kn.shift : r;
        const int rb = sa ? r : r - kn.shift;
        const std::size_t go = global_row(ra);
        rotate_rows(a + static_cast<std::size_t>(ra) * w, b + static_cast<std::size_t>(rb) * w, c + go, s + go, kn.sign, w);
      }
    }
  }
  for (int q = 0; q < 4; ++q) {
    double* dst = scratch_y_[static_cast<std::size_t>(q)].data();
    const double* t = buf.data() + static_cast<std::size_t>(q) * plane;
    for (int r = halo; r < halo + (b1 - b0); ++r) {
      std::copy_n(t + static_cast<std::size_t>(r) * w, w, dst + global_row(r));
    }
  }
}

void Evolver::advance(QubitField& field) {
  if (!(field.geometry() == geom_)) throw LatticeError("field shape does not match the dielectric map");
  for (const Group& g : groups_) {
    switch (g.type) {
      case Group::Unitary:
        if (g.axis == Axis::X) {
          pool_->parallel_for(geom_.ny, [&](int b, int e) { run_group_x(field, g, b, e); });
        } else {
          const auto& pairs = coupling_pairs(Axis::Y);
          const int comps[4] = {pairs[0].a, pairs[0].b, pairs[1].a, pairs[1].b};
          for (auto& v : scratch_y_) v.resize(geom_.sites());
          const int tiles = ((geom_.ny + kBand - 1) / kBand) * ((geom_.nx + kTileW - 1) / kTileW);
          pool_->parallel_for(tiles, [&](int b, int e) {
            std::vector<double> buf;
            for (int t = b; t < e; ++t) run_tile_y(field, g, t, buf);
          });
          for (int q = 0; q < 4; ++q) field.comp(comps[q]).swap(scratch_y_[static_cast<std::size_t>(q)]);
        }
        break;
      case Group::Potential: {
        const auto& pairs = coupling_pairs(g.axis);
        for (const PotSite& ps : g.sites) {
          double& a = field.comp(pairs[static_cast<std::size_t>(ps.pair)].a)[ps.k];
          double& b = field.comp(pairs[static_cast<std::size_t>(ps.pair)].b)[ps.k];
          if (opts_.potential_form == PotentialForm::Sparse) {
            b = ps.s * a + ps.c * b;
          } else {
            rotate_pair(a, b, ps.c, ps.s);
          }
        }
        break;
      }
      case Group::Literal:
        apply_entry(field, g.entry);
        break;
    }
  }
}

void Evolver::step(RunState& state) {
  advance(state.field);
  double probe = 0.0;
  for (int c = 0; c < kComponents; ++c) {
    for (double v : state.field.comp(c)) probe += v * 0.0;
  }
  if (probe != 0.0 || std::isnan(probe)) {
    throw NonFiniteFieldError("non-finite amplitude after step " + std::to_string(state.t + 1));
  }
  ++state.t;
}

void Evolver::apply_entry(QubitField& field, const ScheduleEntry& e, bool inverse) const {
  switch (e.kind) {
    case OpKind::Collide: {
      const CollisionAngles& ang =
          e.frame == AngleFrame::Local ? (e.axis == Axis::X ? local_x_ : local_y_) : displaced(e.axis, e.set, e.shift);
      collide(field, ang, inverse ? -e.sign : e.sign);
      break;
    }
    case OpKind::Stream:
      stream(field, e.axis, e.set, inverse ? -e.shift : e.shift);
      break;
    case OpKind::Potential:
      if (inverse) throw std::logic_error("potential operators have no exact inverse");
      potential(field, e.axis == Axis::X ? pot_x_ : pot_y_, opts_.potential_form);
      break;
  }
}

void Evolver::step_reference(QubitField& field) const {
  for (const auto& e : schedule_.entries) apply_entry(field, e);
}

void Evolver::apply_unitary(QubitField& field, bool inverse) const {
  const auto& e = schedule_.entries;
  if (!inverse) {
    for (const auto& x : e) {
      if (x.kind != OpKind::Potential) apply_entry(field, x);
    }
  } else {
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
      if (it->kind != OpKind::Potential) apply_entry(field, *it, true);
    }
  }
}

void step(RunState& state, const DielectricMap& map, const EvolutionOptions& opts) {
  EvolutionOptions o = opts;
  o.eps = state.eps;
  o.first_order = state.schedule.first_order;
  Evolver ev(map, o);
  ev.step(state);
}

void run(Evolver& evolver, RunState& state, long n_steps, long cadence, const Sink& sink) {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  if (cadence < 1) throw std::invalid_argument("cadence must be at least 1");
  const long end = state.t + n_steps;
  if (sink) sink(state);
  while (state.t < end) {
    evolver.step(state);
    if (sink && (state.t % cadence == 0 || state.t == end)) sink(state);
  }
}

void run(RunState& state, const DielectricMap& map, long n_steps, long cadence, const Sink& sink,
         const EvolutionOptions& opts) {
  EvolutionOptions o = opts;
  o.eps = state.eps;
  o.first_order = state.schedule.first_order;
  Evolver ev(map, o);
  run(ev, state, n_steps, cadence, sink);
}

}  // namespace qla
