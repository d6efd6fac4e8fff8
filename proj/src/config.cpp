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

#include "qla/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <type_traits>

namespace qla {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid config";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

std::optional<long> to_long(const std::string& v) {
  long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) return std::nullopt;
  return x;
}

std::optional<bool> to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  return std::nullopt;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Setter = std::function<std::optional<std::string>(const std::string&, RunConfig&)>;

struct Key {
  const char* name;
  bool required;
  Setter set;
};

constexpr double kInf = 1e300;

// Setter helpers return an error message or nothing.
template <class F>
Setter real_into(F target, double lo, double hi, bool lo_open, bool hi_open) {
  return [=](const std::string& v, RunConfig& c) -> std::optional<std::string> {
    const auto x = to_double(v);
    if (!x) return "expected a finite number, got '" + v + "'";
    const bool lo_bad = lo_open ? !(*x > lo) : !(*x >= lo);
    const bool hi_bad = hi_open ? !(*x < hi) : !(*x <= hi);
    if (lo_bad || hi_bad) {
      if (hi >= kInf) return "value " + v + " must be " + (lo_open ? "> " : ">= ") + fmt(lo);
      return "value " + v + " outside " + std::string(lo_open ? "(" : "[") + fmt(lo) + ", " + fmt(hi) +
             (hi_open ? ")" : "]");
    }
    target(c) = *x;
    return std::nullopt;
  };
}

template <class F>
Setter integer_into(F target, long lo, long hi) {
  return [=](const std::string& v, RunConfig& c) -> std::optional<std::string> {
    const auto x = to_long(v);
    if (!x) return "expected an integer, got '" + v + "'";
    if (*x < lo || *x > hi) return "value " + v + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    target(c) = static_cast<std::remove_reference_t<decltype(target(c))>>(*x);
    return std::nullopt;
  };
}

template <class F>
Setter boolean_into(F target) {
  return [=](const std::string& v, RunConfig& c) -> std::optional<std::string> {
    const auto x = to_bool(v);
    if (!x) return "expected true or false, got '" + v + "'";
    target(c) = *x;
    return std::nullopt;
  };
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"grid.nx", true, integer_into([](RunConfig& c) -> int& { return c.nx; }, 8, 1 << 16)},
      {"grid.ny", true, integer_into([](RunConfig& c) -> int& { return c.ny; }, 8, 1 << 16)},
      {"evolution.eps", false,
       real_into([](RunConfig& c) -> double& { return c.evolution.eps; }, 0.0, 0.5, true, false)},
      {"evolution.first_order", false, boolean_into([](RunConfig& c) -> bool& { return c.evolution.first_order; })},
      {"evolution.potential_coupling", false,
       real_into([](RunConfig& c) -> double& { return c.evolution.potential_coupling; }, -kInf, kInf, false, false)},
      {"evolution.potential_form", false,
       [](const std::string& v, RunConfig& c) -> std::optional<std::string> {
         if (v == "sparse") {
           c.evolution.potential_form = PotentialForm::Sparse;
         } else if (v == "orthogonal") {
           c.evolution.potential_form = PotentialForm::Orthogonal;
         } else {
           return "expected sparse or orthogonal, got '" + v + "'";
         }
         return std::nullopt;
       }},
      {"evolution.workers", false, integer_into([](RunConfig& c) -> int& { return c.evolution.workers; }, 1, 1024)},
      {"medium.n1", true,
       real_into([](RunConfig& c) -> double& { return c.interface.n_left; }, 0.0, kInf, true, false)},
      {"medium.n2", true,
       real_into([](RunConfig& c) -> double& { return c.interface.n_right; }, 0.0, kInf, true, false)},
      {"interface.axis", false,
       [](const std::string& v, RunConfig& c) -> std::optional<std::string> {
         if (v == "x") {
           c.interface.axis = Axis::X;
         } else if (v == "y") {
           c.interface.axis = Axis::Y;
         } else {
           return "expected x or y, got '" + v + "'";
         }
         return std::nullopt;
       }},
      {"interface.fraction", false,
       real_into([](RunConfig& c) -> double& { return c.interface.split_fraction; }, 0.0, 1.0, true, true)},
      {"interface.smoothing", false,
       real_into([](RunConfig& c) -> double& { return c.interface.smoothing_width; }, 0.0, kInf, false, false)},
      {"interface.blend", false,
       [](const std::string& v, RunConfig& c) -> std::optional<std::string> {
         if (v == "none") {
           c.interface.harmonic_blend = false;
         } else if (v == "harmonic") {
           c.interface.harmonic_blend = true;
         } else {
           return "expected none or harmonic, got '" + v + "'";
         }
         return std::nullopt;
       }},
      {"pulse.preset", false,
       [](const std::string& v, RunConfig& c) -> std::optional<std::string> {
         try {
           find_preset(v);
         } catch (const std::out_of_range&) {
           return "unknown preset '" + v + "' (burst, thin_long, finite)";
         }
         c.preset = v;
         return std::nullopt;
       }},
      {"pulse.scale", false, real_into([](RunConfig& c) -> double& { return c.pulse_scale; }, 0.0, kInf, true, false)},
      {"pulse.zeta_w", false, real_into([](RunConfig& c) -> double& { return c.pulse.zeta_w; }, 0.0, kInf, true, false)},
      {"pulse.chi_w", false, real_into([](RunConfig& c) -> double& { return c.pulse.chi_w; }, 0.0, kInf, true, false)},
      {"pulse.gamma_w", false,
       real_into([](RunConfig& c) -> double& { return c.pulse.gamma_w; }, 0.0, kInf, true, false)},
      {"pulse.theta", true, real_into([](RunConfig& c) -> double& { return c.pulse.theta_inc; }, 0.0, 90.0, false, true)},
      {"pulse.amplitude", false,
       real_into([](RunConfig& c) -> double& { return c.pulse.amplitude; }, -kInf, kInf, false, false)},
      {"pulse.zeta0", false, real_into([](RunConfig& c) -> double& { return c.pulse.zeta0; }, -kInf, kInf, false, false)},
      {"pulse.chi0", false, real_into([](RunConfig& c) -> double& { return c.pulse.chi0; }, -kInf, kInf, false, false)},
      {"pulse.centered_carrier", false, boolean_into([](RunConfig& c) -> bool& { return c.centered_carrier; })},
      {"run.steps", true, integer_into([](RunConfig& c) -> long& { return c.n_steps; }, 0, 1L << 40)},
      {"run.cadence", false, integer_into([](RunConfig& c) -> long& { return c.cadence; }, 1, 1L << 40)},
      {"output.dir", false,
       [](const std::string& v, RunConfig& c) -> std::optional<std::string> {
         if (v.empty()) return "must not be empty";
         c.output_dir = v;
         return std::nullopt;
       }},
      {"output.heatmap", false,
       [](const std::string& v, RunConfig& c) -> std::optional<std::string> {
         if (v == "positive") {
           c.heatmap = HeatmapMapping::PositiveClip;
         } else if (v == "signed") {
           c.heatmap = HeatmapMapping::Signed;
         } else {
           return "expected positive or signed, got '" + v + "'";
         }
         return std::nullopt;
       }},
      {"output.snapshots", false, boolean_into([](RunConfig& c) -> bool& { return c.write_snapshots; })},
  };
  return k;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

const std::vector<std::string>& required_config_keys() {
  static const std::vector<std::string> r = [] {
    std::vector<std::string> out;
    for (const auto& k : keys()) {
      if (k.required) out.emplace_back(k.name);
    }
    return out;
  }();
  return r;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::vector<std::string> errors;
  std::map<std::string, const Key*> table;
  for (const auto& k : keys()) table[k.name] = &k;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) {
      errors.push_back(key + ": unknown key (line " + std::to_string(lineno) + ")");
      continue;
    }
    if (!seen.insert(key).second) {
      errors.push_back(key + ": given more than once (line " + std::to_string(lineno) + ")");
      continue;
    }
    if (auto err = it->second->set(value, cfg)) errors.push_back(key + ": " + *err);
  }

  for (const auto& k : required_config_keys()) {
    if (!seen.count(k)) errors.push_back(k + ": missing required key");
  }

  const bool any_width = seen.count("pulse.zeta_w") || seen.count("pulse.chi_w") || seen.count("pulse.gamma_w");
  if (seen.count("pulse.preset")) {
    for (const char* w : {"pulse.zeta_w", "pulse.chi_w", "pulse.gamma_w"}) {
      if (seen.count(w)) errors.push_back(std::string(w) + ": conflicts with pulse.preset");
    }
    if (errors.empty()) {
      const ScenarioPreset& p = find_preset(cfg.preset);
      cfg.pulse.zeta_w = p.zeta_w * cfg.pulse_scale;
      cfg.pulse.chi_w = p.chi_w * cfg.pulse_scale;
      cfg.pulse.gamma_w = p.gamma_w * cfg.pulse_scale;
    }
  } else {
    if (seen.count("pulse.scale")) errors.push_back("pulse.scale: only applies together with pulse.preset");
    if (!any_width) {
      errors.push_back("pulse.preset: missing; give a preset or pulse.zeta_w, pulse.chi_w and pulse.gamma_w");
    } else {
      for (const char* w : {"pulse.zeta_w", "pulse.chi_w", "pulse.gamma_w"}) {
        if (!seen.count(w)) errors.push_back(std::string(w) + ": missing (explicit widths need all three)");
      }
    }
  }
  if (seen.count("pulse.zeta0") != seen.count("pulse.chi0")) {
    errors.push_back(std::string(seen.count("pulse.zeta0") ? "pulse.chi0" : "pulse.zeta0") +
                     ": pulse.zeta0 and pulse.chi0 go together");
  }
  cfg.pulse_center_given = seen.count("pulse.zeta0") && seen.count("pulse.chi0");
  if (seen.count("pulse.amplitude") && cfg.pulse.amplitude == 0.0) {
    errors.push_back("pulse.amplitude: must be nonzero");
  }
  if (cfg.interface.harmonic_blend && cfg.interface.smoothing_width != 0.0) {
    errors.push_back("interface.blend: harmonic needs interface.smoothing = 0");
  }

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("grid.nx", std::to_string(c.nx));
  e.emplace_back("grid.ny", std::to_string(c.ny));
  e.emplace_back("evolution.eps", fmt(c.evolution.eps));
  e.emplace_back("evolution.first_order", c.evolution.first_order ? "true" : "false");
  e.emplace_back("evolution.potential_coupling", fmt(c.evolution.potential_coupling));
  e.emplace_back("evolution.potential_form",
                 c.evolution.potential_form == PotentialForm::Sparse ? "sparse" : "orthogonal");
  e.emplace_back("evolution.workers", std::to_string(c.evolution.workers));
  e.emplace_back("medium.n1", fmt(c.interface.n_left));
  e.emplace_back("medium.n2", fmt(c.interface.n_right));
  e.emplace_back("interface.axis", c.interface.axis == Axis::X ? "x" : "y");
  e.emplace_back("interface.fraction", fmt(c.interface.split_fraction));
  e.emplace_back("interface.smoothing", fmt(c.interface.smoothing_width));
  e.emplace_back("interface.blend", c.interface.harmonic_blend ? "harmonic" : "none");
  // Widths are echoed resolved, so the echo parses back without the preset.
  e.emplace_back("pulse.zeta_w", fmt(c.pulse.zeta_w));
  e.emplace_back("pulse.chi_w", fmt(c.pulse.chi_w));
  e.emplace_back("pulse.gamma_w", fmt(c.pulse.gamma_w));
  e.emplace_back("pulse.theta", fmt(c.pulse.theta_inc));
  e.emplace_back("pulse.amplitude", fmt(c.pulse.amplitude));
  if (c.pulse_center_given) {
    e.emplace_back("pulse.zeta0", fmt(c.pulse.zeta0));
    e.emplace_back("pulse.chi0", fmt(c.pulse.chi0));
  }
  e.emplace_back("pulse.centered_carrier", c.centered_carrier ? "true" : "false");
  e.emplace_back("run.steps", std::to_string(c.n_steps));
  e.emplace_back("run.cadence", std::to_string(c.cadence));
  e.emplace_back("output.dir", c.output_dir);
  e.emplace_back("output.heatmap", c.heatmap == HeatmapMapping::PositiveClip ? "positive" : "signed");
  e.emplace_back("output.snapshots", c.write_snapshots ? "true" : "false");
  return e;
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_entries(cfg)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace qla
