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

#include "cavitymech/constants.hpp"
#include "cavitymech/types.hpp"

namespace cavitymech {

// x_zp = sqrt(hbar / (2 m omega_m)), the ground-state RMS displacement.
double zero_point_motion(const MechanicalMode& mech);

// Thermal phonon occupation of the mechanical bath.
//   linear:        k_B T / (hbar omega_m)   (high-temperature form)
//   bose_einstein: 1 / (exp(hbar omega / k_B T) - 1)
enum class OccupationModel { linear, bose_einstein };
double thermal_occupation(const MechanicalMode& mech,
                          OccupationModel model = OccupationModel::linear);

// Moving-mirror cavity coupling g = omega_c / L = (2 pi c / lambda) / L, rad/s per m.
double mirror_coupling(double lambda_opt, double cavity_length);

// Steady intracavity photon number |alpha|^2 for a driven cavity:
// (P / hbar omega_drive) * gamma_ext / (Delta^2 + (gamma/2)^2), single-port
// input-output with gamma = gamma_ext + gamma_int. A directly supplied
// n_photons passes through unchanged.
double intracavity_photons(const CavityMode& cavity, const Drive& drive);

// Drive-enhanced (many-photon) coupling Gamma = g * x_zp * |alpha|, rad/s.
double manyphoton_coupling(const MechanicalMode& mech, const CavityMode& cavity,
                           const Drive& drive);

// Gamma_cool = 4 Gamma^2 / gamma, valid at Delta = omega_m in the resolved-
// sideband limit. detuning_matched is false when Delta deviates from omega_m
// by more than 1e-6 relative (the formula is then only approximate).
struct CoolingRate {
  double rate;  // rad/s
  bool detuning_matched;
};
CoolingRate cooling_rate(const MechanicalMode& mech, const CavityMode& cavity,
                         const Drive& drive);

// Final phonon occupation under sideband cooling.
//   ratio:        gamma_m n_bath / Gamma_cool      (domain error at Gamma_cool = 0)
//   rate_balance: gamma_m n_bath / (gamma_m + Gamma_cool), regular at 0
enum class FinalOccupationModel { ratio, rate_balance };
double final_occupation(const MechanicalMode& mech, double cooling_rate,
                        FinalOccupationModel model = FinalOccupationModel::ratio);

// Q-frequency screening: quantum coherent operation requires
// Q_m * f_m > k_B T_bath / h (ordinary frequencies on both sides).
struct QuantumEnabled {
  bool enabled;
  double qf_product_Hz;
  double threshold_Hz;
};
QuantumEnabled quantum_enabled(const MechanicalMode& mech);

// eta = 1 / (1 + 2 n_add).
double detection_efficiency(const DetectionChain& chain);

// One-sided thermal force PSD S_F = 4 m gamma_m k_B T_bath, N^2/Hz.
double thermal_force_psd(const MechanicalMode& mech);

// Threshold comparison with both compared numbers attached.
struct RegimeFlag {
  bool satisfied;
  double lhs;
  double rhs;
};

// Regime classification. With two cavities each flag uses the worst case:
// resolved_sideband compares omega_m against the largest gamma, strong_coupling
// the smallest Gamma against max(gamma_i, gamma_m), bistability_risk the
// largest Gamma against omega_m / 2.
struct RegimeReport {
  RegimeFlag resolved_sideband;  // omega_m > gamma
  RegimeFlag strong_coupling;    // Gamma > gamma and Gamma > gamma_m
  RegimeFlag bistability_risk;   // Gamma >= omega_m / 2
  QuantumEnabled quantum;
};
RegimeReport classify_regimes(const HybridSystem& system);

}  // namespace cavitymech
