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

#include "cavitymech/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cavitymech/types.hpp"

namespace cavitymech {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0; }
bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0; }

}  // namespace

void MechanicalMode::validate() const {
  require(finite_positive(omega_m), "mech: omega_m must be positive");
  require(finite_positive(gamma_m), "mech: gamma_m must be positive");
  require(finite_positive(mass), "mech: mass must be positive");
  require(finite_nonneg(T_bath), "mech: T_bath must be >= 0");
}

void CavityMode::validate() const {
  require(finite_nonneg(omega_c), "cavity: omega_c must be >= 0");
  require(finite_nonneg(gamma), "cavity: gamma must be >= 0");
  require(finite_nonneg(gamma_ext), "cavity: gamma_ext must be >= 0");
  require(gamma_ext <= gamma, "cavity: gamma_ext must not exceed gamma");
  require(std::isfinite(g), "cavity: g must be finite");
  require(finite_nonneg(n_thermal), "cavity: n_thermal must be >= 0");
}

void Drive::validate() const {
  require(std::isfinite(detuning), "drive: detuning must be finite");
  require(input_power.has_value() != n_photons.has_value(),
          "drive: exactly one of input_power / n_photons must be set");
  if (input_power) require(finite_nonneg(*input_power), "drive: input_power must be >= 0");
  if (n_photons) require(finite_nonneg(*n_photons), "drive: n_photons must be >= 0");
}

void DetectionChain::validate() const {
  require(finite_nonneg(n_add), "detection: n_add must be >= 0");
}

void HybridSystem::validate() const {
  mech.validate();
  require(!cavities.empty(), "system: at least one cavity required");
  require(cavities.size() <= 2, "system: at most two cavities supported");
  for (const auto& c : cavities) {
    c.cavity.validate();
    c.drive.validate();
  }
  if (cavities.size() == 2) {
    require(cavities[0].cavity.band != cavities[1].cavity.band,
            "system: two cavities must be on distinct bands");
  }
}

std::vector<std::string> HybridSystem::mode_labels() const {
  std::vector<std::string> labels;
  labels.push_back(band_label(cavities[0].cavity.band));
  labels.push_back("mech");
  if (cavities.size() > 1) labels.push_back(band_label(cavities[1].cavity.band));
  return labels;
}

int HybridSystem::cavity_index(Band band) const {
  for (std::size_t i = 0; i < cavities.size(); ++i)
    if (cavities[i].cavity.band == band) return static_cast<int>(i);
  throw ConfigError(std::string("system: no cavity on band ") + band_label(band));
}

double zero_point_motion(const MechanicalMode& mech) {
  mech.validate();
  return std::sqrt(constants.hbar / (2.0 * mech.mass * mech.omega_m));
}

double thermal_occupation(const MechanicalMode& mech, OccupationModel model) {
  mech.validate();
  if (mech.T_bath == 0) return 0.0;
  const double x = constants.hbar * mech.omega_m / (constants.k_B * mech.T_bath);
  if (model == OccupationModel::linear) return 1.0 / x;
  return 1.0 / std::expm1(x);
}

double mirror_coupling(double lambda_opt, double cavity_length) {
  require(finite_positive(lambda_opt), "mirror_coupling: wavelength must be positive");
  require(finite_positive(cavity_length), "mirror_coupling: length must be positive");
  const double omega_c = two_pi * constants.c / lambda_opt;
  return omega_c / cavity_length;
}

double intracavity_photons(const CavityMode& cavity, const Drive& drive) {
  cavity.validate();
  drive.validate();
  if (drive.n_photons) return *drive.n_photons;
  require(cavity.omega_c > 0, "intracavity_photons: omega_c required with input_power");
  const double omega_drive = cavity.omega_c - drive.detuning;
  require(omega_drive > 0, "intracavity_photons: drive frequency must be positive");
  const double half = 0.5 * cavity.gamma;
  const double denom = drive.detuning * drive.detuning + half * half;
  require(denom > 0, "intracavity_photons: lossless cavity on resonance");
  const double flux = *drive.input_power / (constants.hbar * omega_drive);
  return flux * cavity.gamma_ext / denom;
}

double manyphoton_coupling(const MechanicalMode& mech, const CavityMode& cavity,
                           const Drive& drive) {
  const double n = intracavity_photons(cavity, drive);
  return std::abs(cavity.g) * zero_point_motion(mech) * std::sqrt(n);
}

CoolingRate cooling_rate(const MechanicalMode& mech, const CavityMode& cavity,
                         const Drive& drive) {
  require(cavity.gamma > 0, "cooling_rate: cavity gamma must be positive");
  const double Gamma = manyphoton_coupling(mech, cavity, drive);
  const bool matched =
      std::abs(drive.detuning - mech.omega_m) <= 1e-6 * mech.omega_m;
  return {4.0 * Gamma * Gamma / cavity.gamma, matched};
}

double final_occupation(const MechanicalMode& mech, double cooling_rate,
                        FinalOccupationModel model) {
  require(finite_nonneg(cooling_rate), "final_occupation: rate must be >= 0");
  const double heat = mech.gamma_m * thermal_occupation(mech);
  if (model == FinalOccupationModel::ratio) {
    require(cooling_rate > 0, "final_occupation: ratio model needs a nonzero rate");
    return heat / cooling_rate;
  }
  return heat / (mech.gamma_m + cooling_rate);
}

QuantumEnabled quantum_enabled(const MechanicalMode& mech) {
  mech.validate();
  const double f_m = mech.omega_m / two_pi;
  const double qf = mech.quality() * f_m;
  const double threshold = constants.k_B * mech.T_bath / constants.h;
  return {qf > threshold, qf, threshold};
}

double detection_efficiency(const DetectionChain& chain) {
  chain.validate();
  return 1.0 / (1.0 + 2.0 * chain.n_add);
}

double thermal_force_psd(const MechanicalMode& mech) {
  mech.validate();
  return 4.0 * mech.mass * mech.gamma_m * constants.k_B * mech.T_bath;
}

RegimeReport classify_regimes(const HybridSystem& system) {
  system.validate();
  double gamma_max = 0;
  double Gamma_min = std::numeric_limits<double>::infinity();
  double Gamma_max = 0;
  for (const auto& dc : system.cavities) {
    gamma_max = std::max(gamma_max, dc.cavity.gamma);
    const double G = manyphoton_coupling(system.mech, dc.cavity, dc.drive);
    Gamma_min = std::min(Gamma_min, G);
    Gamma_max = std::max(Gamma_max, G);
  }
  RegimeReport report;
  report.resolved_sideband = {system.mech.omega_m > gamma_max,
                              system.mech.omega_m, gamma_max};
  const double weakest_rate = std::max(gamma_max, system.mech.gamma_m);
  report.strong_coupling = {Gamma_min > weakest_rate, Gamma_min, weakest_rate};
  report.bistability_risk = {Gamma_max >= 0.5 * system.mech.omega_m, Gamma_max,
                             0.5 * system.mech.omega_m};
  report.quantum = quantum_enabled(system.mech);
  return report;
}

}  // namespace cavitymech
