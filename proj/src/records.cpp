// Copyright 2026 The cavitymech Authors
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

#include "cavitymech/records.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cavitymech/constants.hpp"

namespace cavitymech {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// Unknown keys are fatal; if the key is a known key minus its unit suffix,
// say so.
void check_keys(const json& obj, const std::string& section,
                const std::vector<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == key;
    if (ok) continue;
    std::string hint;
    for (const auto& a : allowed) {
      if (a.size() > key.size() && a.compare(0, key.size(), key) == 0 &&
          a[key.size()] == '_') {
        hint = " (did you mean " + quoted(a) + "?)";
        break;
      }
    }
    throw ConfigError("config: unknown key " + quoted(key) + " in section " +
                      quoted(section) + hint);
  }
}

const json& require_key(const json& obj, const std::string& section,
                        const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("config: section " + quoted(section) +
                      " requires key " + quoted(key));
  return *it;
}

double as_num(const json& v, const std::string& section,
              const std::string& key) {
  if (!v.is_number())
    throw ConfigError("config: key " + quoted(key) + " in section " +
                      quoted(section) + " must be a number");
  return v.get<double>();
}

double require_num(const json& obj, const std::string& section,
                   const std::string& key) {
  return as_num(require_key(obj, section, key), section, key);
}

double optional_num(const json& obj, const std::string& section,
                    const std::string& key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as_num(*it, section, key);
}

int require_int(const json& obj, const std::string& section,
                const std::string& key) {
  const json& v = require_key(obj, section, key);
  if (!v.is_number_integer())
    throw ConfigError("config: key " + quoted(key) + " in section " +
                      quoted(section) + " must be an integer");
  return v.get<int>();
}

std::string require_str(const json& obj, const std::string& section,
                        const std::string& key) {
  const json& v = require_key(obj, section, key);
  if (!v.is_string())
    throw ConfigError("config: key " + quoted(key) + " in section " +
                      quoted(section) + " must be a string");
  return v.get<std::string>();
}

std::string optional_str(const json& obj, const std::string& section,
                         const std::string& key, const std::string& fallback) {
  if (obj.find(key) == obj.end()) return fallback;
  return require_str(obj, section, key);
}

bool optional_bool(const json& obj, const std::string& section,
                   const std::string& key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean())
    throw ConfigError("config: key " + quoted(key) + " in section " +
                      quoted(section) + " must be a boolean");
  return it->get<bool>();
}

const json& require_object(const json& obj, const std::string& section,
                           const std::string& key) {
  const json& v = require_key(obj, section, key);
  if (!v.is_object())
    throw ConfigError("config: key " + quoted(key) + " in section " +
                      quoted(section) + " must be an object");
  return v;
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& allowed) {
  throw ConfigError("config: key " + quoted(key) + " in section " +
                    quoted(section) + " must be one of " + allowed);
}

MechanicalMode parse_mech(const json& obj) {
  check_keys(obj, "mech", {"omega_m_Hz", "gamma_m_Hz", "mass_kg", "T_bath_K"});
  MechanicalMode mech;
  mech.omega_m = two_pi * require_num(obj, "mech", "omega_m_Hz");
  mech.gamma_m = two_pi * require_num(obj, "mech", "gamma_m_Hz");
  mech.mass = require_num(obj, "mech", "mass_kg");
  mech.T_bath = require_num(obj, "mech", "T_bath_K");
  mech.validate();
  return mech;
}

Drive parse_drive(const json& obj, const std::string& section) {
  check_keys(obj, section, {"detuning_Hz", "input_power_W", "n_photons"});
  Drive drive;
  drive.detuning = two_pi * require_num(obj, section, "detuning_Hz");
  if (obj.find("input_power_W") != obj.end())
    drive.input_power = as_num(obj.at("input_power_W"), section, "input_power_W");
  if (obj.find("n_photons") != obj.end())
    drive.n_photons = as_num(obj.at("n_photons"), section, "n_photons");
  drive.validate();
  return drive;
}

DrivenCavity parse_cavity(const json& obj, const std::string& section) {
  check_keys(obj, section,
             {"band", "omega_c_Hz", "gamma_Hz", "gamma_ext_Hz", "g_Hz_per_m",
              "n_thermal", "em_sign", "drive"});
  DrivenCavity dc;
  const std::string band = require_str(obj, section, "band");
  if (band == "microwave")
    dc.cavity.band = Band::microwave;
  else if (band == "optical")
    dc.cavity.band = Band::optical;
  else
    bad_value(section, "band", "\"microwave\", \"optical\"");

  dc.cavity.omega_c = two_pi * optional_num(obj, section, "omega_c_Hz", 0.0);
  dc.cavity.gamma = two_pi * require_num(obj, section, "gamma_Hz");
  // Default: fully external coupling (gamma_ext = gamma).
  dc.cavity.gamma_ext = two_pi * optional_num(obj, section, "gamma_ext_Hz",
                                              dc.cavity.gamma / two_pi);
  dc.cavity.g = two_pi * optional_num(obj, section, "g_Hz_per_m", 0.0);
  dc.cavity.n_thermal = optional_num(obj, section, "n_thermal", 0.0);
  dc.em_sign = optional_num(obj, section, "em_sign", 0.0);
  if (dc.em_sign != 0.0 && dc.em_sign != 1.0 && dc.em_sign != -1.0)
    bad_value(section, "em_sign", "-1, 0, 1");
  dc.cavity.validate();
  dc.drive = parse_drive(require_object(obj, section, "drive"),
                         section + ".drive");
  return dc;
}

DetectionChain parse_detection(const json& obj) {
  check_keys(obj, "detection", {"n_add"});
  DetectionChain chain;
  chain.n_add = require_num(obj, "detection", "n_add");
  chain.validate();
  return chain;
}

BeamSpec parse_beam(const json& obj) {
  check_keys(obj, "beam",
             {"length_m", "width_m", "thickness_m", "youngs_modulus_Pa",
              "density_kg_per_m3", "stress_Pa"});
  BeamSpec beam;
  beam.length = require_num(obj, "beam", "length_m");
  beam.width = require_num(obj, "beam", "width_m");
  beam.thickness = require_num(obj, "beam", "thickness_m");
  beam.youngs_modulus = require_num(obj, "beam", "youngs_modulus_Pa");
  beam.density = require_num(obj, "beam", "density_kg_per_m3");
  beam.stress = optional_num(obj, "beam", "stress_Pa", 0.0);
  beam.validate();
  return beam;
}

CoolParams parse_cool(const json& obj) {
  check_keys(obj, "cool", {"model"});
  CoolParams params;
  const std::string model = optional_str(obj, "cool", "model", "full");
  if (model == "full")
    params.rwa = false;
  else if (model == "rwa")
    params.rwa = true;
  else
    bad_value("cool", "model", "\"full\", \"rwa\"");
  return params;
}

SpectrumParams parse_spectrum(const json& obj) {
  check_keys(obj, "spectrum",
             {"freq_min_Hz", "freq_max_Hz", "n_points", "spacing",
              "imprecision_floor_m2_per_Hz"});
  SpectrumParams params;
  params.freq_min_Hz = require_num(obj, "spectrum", "freq_min_Hz");
  params.freq_max_Hz = require_num(obj, "spectrum", "freq_max_Hz");
  params.n_points = require_int(obj, "spectrum", "n_points");
  const std::string spacing = optional_str(obj, "spectrum", "spacing", "linear");
  if (spacing == "linear")
    params.log_spacing = false;
  else if (spacing == "log")
    params.log_spacing = true;
  else
    bad_value("spectrum", "spacing", "\"linear\", \"log\"");
  params.imprecision_floor =
      optional_num(obj, "spectrum", "imprecision_floor_m2_per_Hz", 0.0);
  if (params.n_points < 2 || params.n_points > 1000000)
    throw ConfigError("config: spectrum n_points must be in [2, 1000000]");
  if (!(params.freq_min_Hz >= 0) || !(params.freq_max_Hz > params.freq_min_Hz))
    throw ConfigError("config: spectrum needs 0 <= freq_min_Hz < freq_max_Hz");
  if (params.log_spacing && !(params.freq_min_Hz > 0))
    throw ConfigError("config: spectrum log spacing needs freq_min_Hz > 0");
  return params;
}

InputState parse_input(const json& obj, const std::string& section) {
  check_keys(obj, section, {"kind", "alpha_re", "alpha_im", "n"});
  InputState input;
  const std::string kind = require_str(obj, section, "kind");
  if (kind == "vacuum") {
    input.kind = InputState::Kind::vacuum;
  } else if (kind == "coherent") {
    input.kind = InputState::Kind::coherent;
    input.alpha = {optional_num(obj, section, "alpha_re", 0.0),
                   optional_num(obj, section, "alpha_im", 0.0)};
  } else if (kind == "fock") {
    input.kind = InputState::Kind::fock;
    input.n = require_int(obj, section, "n");
  } else {
    bad_value(section, "kind", "\"vacuum\", \"coherent\", \"fock\"");
  }
  input.validate();
  return input;
}

TransferParams parse_transfer(const json& obj) {
  check_keys(obj, "transfer",
             {"Gamma_EM_Hz", "Gamma_OM_Hz", "duration_s", "direction",
              "engine", "input", "oracle_dims", "report_raw"});
  TransferParams params;
  params.protocol.Gamma_EM = two_pi * require_num(obj, "transfer", "Gamma_EM_Hz");
  params.protocol.Gamma_OM = two_pi * require_num(obj, "transfer", "Gamma_OM_Hz");
  if (obj.find("duration_s") != obj.end()) {
    params.protocol.duration = as_num(obj.at("duration_s"), "transfer", "duration_s");
    params.duration_given = true;
  }
  const std::string direction =
      optional_str(obj, "transfer", "direction", "EtoO");
  if (direction == "EtoO")
    params.protocol.direction = TransferDirection::EtoO;
  else if (direction == "OtoE")
    params.protocol.direction = TransferDirection::OtoE;
  else
    bad_value("transfer", "direction", "\"EtoO\", \"OtoE\"");

  const std::string engine = optional_str(obj, "transfer", "engine", "gaussian");
  if (engine == "gaussian")
    params.engine = TransferEngine::gaussian;
  else if (engine == "oracle")
    params.engine = TransferEngine::oracle;
  else
    bad_value("transfer", "engine", "\"gaussian\", \"oracle\"");

  if (obj.find("input") != obj.end())
    params.protocol.input =
        parse_input(require_object(obj, "transfer", "input"), "transfer.input");

  if (obj.find("oracle_dims") != obj.end()) {
    const json& dims = obj.at("oracle_dims");
    if (!dims.is_array() || dims.size() != 3)
      throw ConfigError(
          "config: transfer oracle_dims must be an array of three integers");
    for (const auto& d : dims) {
      if (!d.is_number_integer())
        throw ConfigError(
            "config: transfer oracle_dims must be an array of three integers");
      params.oracle_dims.push_back(d.get<int>());
    }
  }
  params.report_raw = optional_bool(obj, "transfer", "report_raw", false);
  return params;
}

DesignParams parse_design(const json& obj) {
  check_keys(obj, "design", {"mechanical_Q", "T_bath_K"});
  DesignParams params;
  params.mechanical_Q = require_num(obj, "design", "mechanical_Q");
  params.T_bath_K = require_num(obj, "design", "T_bath_K");
  return params;
}

OptimizeParams parse_optimize(const json& obj) {
  check_keys(obj, "optimize",
             {"target", "detuning_min_Hz", "detuning_max_Hz", "n_photons_min",
              "n_photons_max", "n_photons_E_min", "n_photons_E_max",
              "n_photons_O_min", "n_photons_O_max", "duration_mode",
              "duration_s", "margin"});
  OptimizeParams params;
  const std::string target = require_str(obj, "optimize", "target");
  if (target == "cooling") {
    params.target = OptimizeParams::Target::cooling;
    params.detuning_min_Hz = require_num(obj, "optimize", "detuning_min_Hz");
    params.detuning_max_Hz = require_num(obj, "optimize", "detuning_max_Hz");
    params.n_photons_min = require_num(obj, "optimize", "n_photons_min");
    params.n_photons_max = require_num(obj, "optimize", "n_photons_max");
  } else if (target == "transfer") {
    params.target = OptimizeParams::Target::transfer;
    params.n_photons_E_min = require_num(obj, "optimize", "n_photons_E_min");
    params.n_photons_E_max = require_num(obj, "optimize", "n_photons_E_max");
    params.n_photons_O_min = require_num(obj, "optimize", "n_photons_O_min");
    params.n_photons_O_max = require_num(obj, "optimize", "n_photons_O_max");
  } else {
    bad_value("optimize", "target", "\"cooling\", \"transfer\"");
  }

  const std::string mode =
      optional_str(obj, "optimize", "duration_mode", "co_optimized");
  if (mode == "co_optimized") {
    params.co_optimize_duration = true;
  } else if (mode == "fixed") {
    params.co_optimize_duration = false;
    params.fixed_duration_s = require_num(obj, "optimize", "duration_s");
  } else {
    bad_value("optimize", "duration_mode", "\"fixed\", \"co_optimized\"");
  }
  params.margin = optional_num(obj, "optimize", "margin", 0.45);
  if (!(params.margin > 0 && params.margin < 0.5))
    throw ConfigError("config: optimize margin must be in (0, 0.5)");
  return params;
}

SweepParams parse_sweep(const json& obj) {
  check_keys(obj, "sweep", {"axes", "metric"});
  SweepParams params;
  params.metric = require_str(obj, "sweep", "metric");
  const json& axes = require_key(obj, "sweep", "axes");
  if (!axes.is_array() || axes.empty() || axes.size() > 3)
    throw ConfigError("config: sweep axes must be an array of 1 to 3 entries");
  int index = 0;
  for (const auto& entry : axes) {
    const std::string section = "sweep.axes[" + std::to_string(index++) + "]";
    if (!entry.is_object())
      throw ConfigError("config: " + section + " must be an object");
    check_keys(entry, section, {"key", "min", "max", "n", "spacing"});
    SweepAxis axis;
    axis.key = require_str(entry, section, "key");
    axis.min = require_num(entry, section, "min");
    axis.max = require_num(entry, section, "max");
    axis.n = require_int(entry, section, "n");
    const std::string spacing = optional_str(entry, section, "spacing", "linear");
    if (spacing == "linear")
      axis.log_spacing = false;
    else if (spacing == "log")
      axis.log_spacing = true;
    else
      bad_value(section, "spacing", "\"linear\", \"log\"");
    params.axes.push_back(std::move(axis));
  }
  return params;
}

}  // namespace

HybridSystem Scenario::system() const {
  if (!mech)
    throw ConfigError("config: this command needs a \"mech\" section");
  if (cavities.empty())
    throw ConfigError("config: this command needs a \"cavities\" section");
  HybridSystem sys{*mech, cavities};
  sys.validate();
  return sys;
}

ParsedConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config: invalid JSON: ") + err.what());
  }
  if (!root.is_object())
    throw ConfigError("config: top level must be a JSON object");
  check_keys(root, "top level",
             {"mech", "cavities", "detection", "beam", "cool", "spectrum",
              "transfer", "design", "optimize", "sweep"});

  ParsedConfig cfg;
  if (root.find("mech") != root.end())
    cfg.scenario.mech = parse_mech(require_object(root, "top level", "mech"));
  if (root.find("cavities") != root.end()) {
    const json& cavities = root.at("cavities");
    if (!cavities.is_array() || cavities.empty() || cavities.size() > 2)
      throw ConfigError("config: cavities must be an array of 1 or 2 entries");
    int index = 0;
    for (const auto& entry : cavities) {
      const std::string section = "cavities[" + std::to_string(index++) + "]";
      if (!entry.is_object())
        throw ConfigError("config: " + section + " must be an object");
      cfg.scenario.cavities.push_back(parse_cavity(entry, section));
    }
  }
  if (root.find("detection") != root.end())
    cfg.scenario.detection =
        parse_detection(require_object(root, "top level", "detection"));
  if (root.find("beam") != root.end())
    cfg.scenario.beam = parse_beam(require_object(root, "top level", "beam"));
  if (root.find("cool") != root.end())
    cfg.cool = parse_cool(require_object(root, "top level", "cool"));
  if (root.find("spectrum") != root.end())
    cfg.spectrum =
        parse_spectrum(require_object(root, "top level", "spectrum"));
  if (root.find("transfer") != root.end())
    cfg.transfer =
        parse_transfer(require_object(root, "top level", "transfer"));
  if (root.find("design") != root.end())
    cfg.design = parse_design(require_object(root, "top level", "design"));
  if (root.find("optimize") != root.end())
    cfg.optimize =
        parse_optimize(require_object(root, "top level", "optimize"));
  if (root.find("sweep") != root.end())
    cfg.sweep = parse_sweep(require_object(root, "top level", "sweep"));
  return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read file " + quoted(path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace cavitymech
