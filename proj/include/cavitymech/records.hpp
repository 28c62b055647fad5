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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavitymech/resonator.hpp"
#include "cavitymech/transfer.hpp"
#include "cavitymech/types.hpp"

namespace cavitymech {

// Everything a config file can describe about the physical setup.
struct Scenario {
  std::optional<MechanicalMode> mech;
  std::vector<DrivenCavity> cavities;
  std::optional<DetectionChain> detection;
  std::optional<BeamSpec> beam;

  // Requires mech and at least one driven cavity.
  HybridSystem system() const;
};

struct CoolParams {
  bool rwa = false;
};

struct SpectrumParams {
  double freq_min_Hz = 0;
  double freq_max_Hz = 0;
  int n_points = 0;
  bool log_spacing = false;
  double imprecision_floor = 0;  // m^2/Hz
};

struct TransferParams {
  TransferProtocol protocol;
  TransferEngine engine = TransferEngine::gaussian;
  std::vector<int> oracle_dims;  // empty: engine default
  bool report_raw = false;
  bool duration_given = false;   // false: use the ideal swap time
};

struct DesignParams {
  double mechanical_Q = 0;
  double T_bath_K = 0;
};

struct OptimizeParams {
  enum class Target { cooling, transfer };
  Target target = Target::cooling;
  // cooling box
  double detuning_min_Hz = 0, detuning_max_Hz = 0;
  double n_photons_min = 0, n_photons_max = 0;
  // transfer box
  double n_photons_E_min = 0, n_photons_E_max = 0;
  double n_photons_O_min = 0, n_photons_O_max = 0;
  bool co_optimize_duration = true;
  double fixed_duration_s = 0;  // used when co_optimize_duration is false
  double margin = 0.45;         // bistability constraint Gamma <= margin * omega_m
};

struct SweepAxis {
  std::string key;
  double min = 0;
  double max = 0;
  int n = 0;
  bool log_spacing = false;
};

struct SweepParams {
  std::vector<SweepAxis> axes;
  std::string metric;
};

// Parsed view of one config file. Sections are optional; each command
// validates that the sections it needs are present.
struct ParsedConfig {
  Scenario scenario;
  std::optional<CoolParams> cool;
  std::optional<SpectrumParams> spectrum;
  std::optional<TransferParams> transfer;
  std::optional<DesignParams> design;
  std::optional<OptimizeParams> optimize;
  std::optional<SweepParams> sweep;
};

// Strict parse: unknown keys are rejected naming the offending key, with a
// unit-suffix hint when the stem matches a known key. Frequencies in configs
// are ordinary (Hz) and converted to angular internally.
ParsedConfig parse_config(const std::string& json_text);

// Convenience for tests and tools.
ParsedConfig parse_config_file(const std::string& path);

}  // namespace cavitymech
