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

#include "qla/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"
#include "qla/output.hpp"

namespace qla {

namespace fs = std::filesystem;

const char* version_string() { return QLA_VERSION; }

Scenario build_scenario(const RunConfig& cfg) {
  try {
    const LatticeGeometry geom = LatticeGeometry::make(cfg.nx, cfg.ny);
    Scenario s{DielectricMap(geom), cfg.pulse, new_field(geom), {}};
    set_halfspace_dielectric(s.map, cfg.interface);
    if (!cfg.pulse_center_given) {
      s.pulse = centered_pulse(geom, cfg.interface, cfg.pulse.zeta_w, cfg.pulse.chi_w, cfg.pulse.gamma_w,
                               cfg.pulse.theta_inc, cfg.pulse.amplitude);
    }
    PulseOptions po;
    po.centered_carrier = cfg.centered_carrier;
    s.initial = init_pulse(geom, s.map, s.pulse, po);
    s.region1 = halfspace_region(geom, cfg.interface, 1);
    return s;
  } catch (const PulseError& e) {
    throw ConfigError({std::string("pulse: ") + e.what()});
  } catch (const LatticeError& e) {
    throw ConfigError({std::string("grid/interface: ") + e.what()});
  }
}

fs::path resolve_output_dir(const RunConfig& cfg) {
  const char* env = std::getenv(kOutputDirEnv);
  if (env != nullptr && env[0] != '\0') return fs::path(env);
  return fs::path(cfg.output_dir);
}

namespace {

std::string stamp(long t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08ld", t);
  return buf;
}

}  // namespace

RunResult run_scenario(const RunConfig& cfg, const fs::path& dir, std::ostream* log) {
  Scenario sc = build_scenario(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());

  RunResult res;
  res.dir = dir;
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  nlohmann::ordered_json manifest;
  manifest["program"] = "qla2d";
  manifest["version"] = version_string();
  nlohmann::ordered_json echo;
  for (const auto& [k, v] : config_entries(cfg)) echo[k] = v;
  manifest["config"] = echo;
  manifest["pulse_center"] = {{"zeta0", sc.pulse.zeta0}, {"chi0", sc.pulse.chi0}};
  manifest["status"] = "running";
  const auto write_manifest = [&] {
    manifest["artifacts"] = res.artifacts;
    write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  };
  write_manifest();

  Evolver evolver(sc.map, cfg.evolution);
  RunState state = evolver.make_state(std::move(sc.initial));

  const auto sink = [&](const RunState& st) {
    res.ledger.append(measure(st.t, st.field, sc.map, sc.region1));
    if (cfg.write_snapshots) {
      const std::string ts = stamp(st.t);
      write_file_atomic(dir / ("field_" + ts + ".qla"), encode_snapshot(snapshot_of(st.field, st.t)));
      write_file_atomic(dir / ("hz_" + ts + ".qla"), encode_snapshot(hz_snapshot(st.field, st.t)));
      write_file_atomic(dir / ("hz_" + ts + ".pgm"),
                        encode_pgm(cfg.nx, cfg.ny, render_heatmap(st.field.comp(5), cfg.heatmap)));
      for (const char* kind : {"field_", "hz_"}) res.artifacts.push_back(std::string(kind) + ts + ".qla");
      res.artifacts.push_back("hz_" + ts + ".pgm");
    }
    write_file_atomic(dir / "ledger.csv", res.ledger.to_csv());
    if (log != nullptr) {
      const LedgerRow& r = res.ledger.rows().back();
      char buf[160];
      std::snprintf(buf, sizeof buf, "t=%ld E=%.12g E1=%.6g E2=%.6g divE=%.3g\n", r.t, r.e_total, r.e_region1,
                    r.e_region2, r.div_e_rel);
      *log << buf << std::flush;
    }
  };

  try {
    run(evolver, state, cfg.n_steps, cfg.cadence, sink);
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    manifest["timing"] = {{"seconds", elapsed()}, {"steps_completed", state.t}};
    try {
      write_manifest();
    } catch (const IoError&) {
    }
    throw;
  }

  res.seconds = elapsed();
  const double site_steps = static_cast<double>(cfg.n_steps) * cfg.nx * cfg.ny;
  manifest["status"] = "complete";
  manifest["timing"] = {{"seconds", res.seconds},
                        {"steps", cfg.n_steps},
                        {"ns_per_site_step", site_steps > 0 ? res.seconds * 1e9 / site_steps : 0.0}};
  manifest["max_relative_drift"] = res.ledger.max_relative_drift();
  res.artifacts.insert(res.artifacts.begin(), "ledger.csv");
  write_manifest();
  return res;
}

}  // namespace qla
