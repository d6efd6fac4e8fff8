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
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qla/operators.hpp"
#include "qla/parallel.hpp"

namespace qla {

enum class OpKind { Collide, Stream, Potential };

// Local collisions use each site's own angle. Displaced collisions sit between
// a stream and its inverse and use the angles of displaced_angles(set, shift).
enum class AngleFrame { Local, Displaced };

struct ScheduleEntry {
  OpKind kind = OpKind::Collide;
  Axis axis = Axis::X;
  StreamSet set = StreamSet::A;
  int sign = +1;
  int shift = 0;
  AngleFrame frame = AngleFrame::Local;
  bool operator==(const ScheduleEntry&) const = default;
};

struct EvolutionSchedule {
  std::vector<ScheduleEntry> entries;
  bool first_order = false;

  int unitary_count() const;
  int potential_count() const;
  bool operator==(const EvolutionSchedule&) const = default;
};

// Per axis and stream set the sweep is
//   C(-) S(f) C'(+) S(-f)   followed by   S(f) C'(+) S(-f) C(-)
// where C' is the displaced collision. The second half is the first in
// reverse order, which removes the first-order splitting error. The
// first-order variant keeps only the first half. Potentials follow at the end.
EvolutionSchedule build_schedule(double eps, bool first_order = false);

struct EvolutionOptions {
  double eps = 0.25;
  bool first_order = false;
  // Scale on the potential angles. Zero leaves the potentials as identities,
  // which is what the calibration selects for this interleave.
  double potential_coupling = 0.0;
  PotentialForm potential_form = PotentialForm::Sparse;
  int workers = 1;
};

struct RunState {
  QubitField field;
  long t = 0;
  EvolutionSchedule schedule;
  double eps = 0.25;
};

class NonFiniteFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Holds everything that is constant over a run: cached collision angles,
// the sparse potential sites, and the compiled kernel list.
class Evolver {
 public:
  Evolver(const DielectricMap& map, const EvolutionOptions& opts);
  ~Evolver();
  Evolver(const Evolver&) = delete;
  Evolver& operator=(const Evolver&) = delete;

  const EvolutionSchedule& schedule() const { return schedule_; }
  const EvolutionOptions& options() const { return opts_; }
  RunState make_state(QubitField field) const;

  // One full timestep through the fused kernels.
  void advance(QubitField& field);
  void step(RunState& state);

  // Applies one schedule entry as a separate whole-field operator.
  void apply_entry(QubitField& field, const ScheduleEntry& e, bool inverse = false) const;
  // Entry-by-entry application of the whole schedule.
  void step_reference(QubitField& field) const;
  // Only the unitary entries, forward or as exact inverses in reverse order.
  void apply_unitary(QubitField& field, bool inverse) const;

  // Sites where either potential actually differs from the identity.
  std::size_t potential_sites() const;

 private:
  struct Kernel;
  struct Group;
  void compile();
  const CollisionAngles& displaced(Axis axis, StreamSet set, int shift) const;
  void run_group_x(QubitField& field, const Group& g, int j0, int j1) const;
  void run_tile_y(const QubitField& field, const Group& g, int tile, std::vector<double>& buf);

  LatticeGeometry geom_;
  EvolutionOptions opts_;
  EvolutionSchedule schedule_;
  CollisionAngles local_x_;
  CollisionAngles local_y_;
  PotentialAngles pot_x_;
  PotentialAngles pot_y_;
  mutable std::map<std::tuple<int, int, int>, CollisionAngles> displaced_cache_;
  std::vector<Group> groups_;
  std::array<std::vector<double>, 4> scratch_y_;
  std::unique_ptr<WorkerPool> pool_;
};

// Convenience forms that build an Evolver on the fly.
void step(RunState& state, const DielectricMap& map, const EvolutionOptions& opts = {});

using Sink = std::function<void(const RunState&)>;

// Applies n_steps steps and calls the sink at t = 0 mod cadence, always
// including the first and the last state.
void run(Evolver& evolver, RunState& state, long n_steps, long cadence, const Sink& sink);
void run(RunState& state, const DielectricMap& map, long n_steps, long cadence, const Sink& sink,
         const EvolutionOptions& opts = {});

}  // namespace qla
