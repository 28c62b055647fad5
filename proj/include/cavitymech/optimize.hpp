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

#include "cavitymech/records.hpp"
#include "cavitymech/transfer.hpp"
#include "cavitymech/types.hpp"

namespace cavitymech {

struct Bounds {
  double lo = 0;
  double hi = 0;
};

struct ConstraintEntry {
  std::string name;
  double value = 0;
  double bound = 0;
  bool ok = false;
};

// One cavity's drive settings at an operating point (angular detuning).
struct CavitySetting {
  double detuning = 0;
  double n_photons = 0;
};

struct OperatingPoint {
  std::vector<CavitySetting> settings;  // same order as system.cavities
  double objective = 0;                 // n_final for cooling, fidelity for transfer
  bool feasible = false;
  std::vector<ConstraintEntry> constraints;
  std::optional<double> duration;       // transfer only
};

struct OptimizeOptions {
  int grid_n = 32;       // coarse grid per axis
  double margin = 0.45;  // drive strength constraint Gamma <= margin * omega_m
  int max_iter = 400;    // simplex refinement iterations
};

// Minimizes the steady-state phonon occupation of a single-cavity system over
// (detuning, n_photons). Points violating the drive-strength bound or giving
// an unstable drift are treated as infeasible, not as errors. If no feasible
// point exists the returned OperatingPoint has feasible=false and the best
// settings found by the constraint-aware search.
OperatingPoint optimize_cooling(const HybridSystem& system, Bounds detuning,
                                Bounds n_photons,
                                const OptimizeOptions& opt = {});

// Maximizes state-transfer fidelity of a two-cavity system over the drive
// photon numbers of both cavities (log-spaced grid), with detunings pinned to
// the mechanical frequency. Duration is co-optimized unless fixed_duration is
// given. The objective is evaluated with the Gaussian engine.
OperatingPoint optimize_transfer(const HybridSystem& system, Bounds n_photons_E,
                                 Bounds n_photons_O,
                                 std::optional<double> fixed_duration,
                                 const InputState& input,
                                 const OptimizeOptions& opt = {});

struct SweepTable {
  std::vector<SweepAxis> axes;
  std::vector<std::vector<double>> grids;  // resolved axis values
  std::vector<double> values;              // row-major, first axis slowest
  std::string metric;
};

// Evaluates one scalar metric on a dense grid over up to three axes. Each
// grid point re-evaluates the full scenario with the axis values substituted,
// so a sweep row is identical to a single-shot run at those values. Points
// where the metric is undefined (unstable, invalid after substitution)
// yield NaN rather than aborting the sweep. cfg.sweep must be present; the
// fidelity metric additionally reads cfg.transfer.
SweepTable run_sweep(const ParsedConfig& cfg, int n_threads = 1);

const std::vector<std::string>& sweep_axis_keys();
const std::vector<std::string>& sweep_metric_names();

}  // namespace cavitymech
