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

// qla2d run <config> | presets | render <snapshot>
// Exit codes: 0 ok, 1 config or usage error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qla/config.hpp"
#include "qla/output.hpp"
#include "qla/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

int cmd_run(const std::string& config_path, bool quiet) {
  qla::RunConfig cfg;
  try {
    cfg = qla::parse_config(qla::read_file(config_path));
  } catch (const qla::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  const auto dir = qla::resolve_output_dir(cfg);
  auto res = qla::run_scenario(cfg, dir, quiet ? nullptr : &std::cout);
  std::printf("wrote %zu ledger rows to %s in %.2f s, max relative energy drift %.3g\n", res.ledger.rows().size(),
              dir.string().c_str(), res.seconds, res.ledger.max_relative_drift());
  return kOk;
}

int cmd_presets() {
  std::printf("%-10s %8s %8s %8s\n", "name", "zeta_w", "chi_w", "gamma_w");
  for (const auto& p : qla::scenario_presets()) {
    std::printf("%-10s %8g %8g %8g\n", p.name.c_str(), p.zeta_w, p.chi_w, p.gamma_w);
  }
  return kOk;
}

int cmd_render(const std::string& path, std::string out, int component, const std::string& mapping) {
  const qla::Snapshot snap = qla::decode_snapshot(qla::read_file(path));
  if (component < 0) component = snap.ncomp == 1 ? 0 : 5;
  if (component >= snap.ncomp) {
    std::cerr << "error: snapshot has " << snap.ncomp << " component(s)\n";
    return kConfigError;
  }
  const auto m = mapping == "signed" ? qla::HeatmapMapping::Signed : qla::HeatmapMapping::PositiveClip;
  if (out.empty()) out = std::filesystem::path(path).replace_extension(".pgm").string();
  qla::write_file_atomic(out, qla::encode_pgm(snap.nx, snap.ny, qla::render_heatmap(snap.component(component), m)));
  std::printf("%s\n", out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit lattice Maxwell solver for pulse scattering at a dielectric interface"};
  app.set_version_flag("--version", qla::version_string());
  app.require_subcommand(1);

  std::string config_path;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_flag("-q,--quiet", quiet, "Do not print ledger rows while running");

  app.add_subcommand("presets", "List the pulse presets");

  std::string snap_path, out_path, mapping = "positive";
  int component = -1;
  auto* render = app.add_subcommand("render", "Render a snapshot component as a PGM heatmap");
  render->add_option("snapshot", snap_path, "Snapshot file")->required();
  render->add_option("-o,--out", out_path, "Output image (default: snapshot path with .pgm)");
  render->add_option("-c,--component", component, "Component index (default: H_z)");
  render->add_option("-m,--mapping", mapping, "positive or signed")->check(CLI::IsMember({"positive", "signed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (app.got_subcommand(run)) return cmd_run(config_path, quiet);
    if (app.got_subcommand("presets")) return cmd_presets();
    return cmd_render(snap_path, out_path, component, mapping);
  } catch (const qla::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
