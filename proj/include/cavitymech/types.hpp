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
#include <stdexcept>
#include <string>
#include <vector>

namespace cavitymech {

// Thrown when a record violates its schema or an operation is called with
// inconsistent inputs (both or neither of power/photon number, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when the linearized drift is not Hurwitz and a steady state is requested.
struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a truncated-Fock simulation pushes population into the top level.
struct TruncationOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the Liouvillian null space has dimension > 1.
struct DegenerateSteadyStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative numerical scheme fails to meet its contract.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Band { microwave, optical };

inline const char* band_label(Band b) {
  return b == Band::microwave ? "microwave" : "optical";
}

// Mechanical oscillator: angular frequency/linewidth, motional mass, bath temperature.
struct MechanicalMode {
  double omega_m = 0;  // rad/s
  double gamma_m = 0;  // rad/s, full width (energy decay rate)
  double mass = 0;     // kg
  double T_bath = 0;   // K

  double quality() const { return omega_m / gamma_m; }
  double spring_constant() const { return mass * omega_m * omega_m; }
  void validate() const;
};

// Electromagnetic cavity mode. gamma is the total energy decay rate (FWHM),
// gamma_ext the external-coupling part. g is the single-photon coupling per
// meter of mechanical displacement. n_thermal is the cavity bath occupation
// (0 for optical; small values model imperfect microwave thermalization).
struct CavityMode {
  Band band = Band::optical;
  double omega_c = 0;    // rad/s
  double gamma = 0;      // rad/s
  double gamma_ext = 0;  // rad/s
  double g = 0;          // rad/s per m
  double n_thermal = 0;  // dimensionless

  void validate() const;
};

// Drive on one cavity. Detuning convention: Delta = omega_c - omega_drive,
// so red detuning is Delta > 0. Exactly one of input_power / n_photons set.
struct Drive {
  double detuning = 0;  // rad/s
  std::optional<double> input_power;  // W
  std::optional<double> n_photons;    // |alpha|^2

  void validate() const;
};

struct DetectionChain {
  double n_add = 0;  // added noise quanta
  void validate() const;
};

// One cavity with its drive and the sign of its interaction term.
// Convention: +1 for the optical (optomechanical) term, -1 for the
// microwave (electromechanical) term.
struct DrivenCavity {
  CavityMode cavity;
  Drive drive;
  double em_sign = 0;  // 0 means "default by band"

  double sign() const {
    if (em_sign != 0) return em_sign;
    return cavity.band == Band::optical ? +1.0 : -1.0;
  }
};

// A mechanical mode parametrically coupled to one or two driven cavities.
// Mode ordering everywhere downstream: [cavity 0, mech, cavity 1].
struct HybridSystem {
  MechanicalMode mech;
  std::vector<DrivenCavity> cavities;

  void validate() const;
  // Labels in mode order, e.g. {"microwave", "mech", "optical"}.
  std::vector<std::string> mode_labels() const;
  // Index of the cavity with the given band; throws if absent.
  int cavity_index(Band band) const;
};

}  // namespace cavitymech
