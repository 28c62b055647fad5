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

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cavitymech/types.hpp"

namespace cavitymech {

// State prepared on the input mode before the swap.
struct InputState {
  enum class Kind { vacuum, coherent, fock };
  Kind kind = Kind::vacuum;
  std::complex<double> alpha{0.0, 0.0};  // coherent amplitude
  int n = 0;                             // Fock occupation

  void validate() const;
};

enum class TransferDirection { EtoO, OtoE };

// Double red-detuned beamsplitter protocol through the mechanical bus.
// The rates are authoritative: simulate_transfer rebuilds each cavity's
// drive photon number as (Gamma / (g x_zp))^2.
struct TransferProtocol {
  double Gamma_EM = 0;   // rad/s
  double Gamma_OM = 0;   // rad/s
  double duration = 0;   // s
  InputState input;
  TransferDirection direction = TransferDirection::EtoO;

  void validate() const;
};

// The competing rates of the protocol (loss-channel budget).
struct NoiseBudget {
  double mech_decoherence = 0;  // gamma_m * n_bath, rad/s
  double cavity_loss_E = 0;     // rad/s
  double cavity_loss_O = 0;     // rad/s
  double Gamma_EM = 0;          // rad/s
  double Gamma_OM = 0;          // rad/s
};

struct TransferResult {
  // Fidelity between the (phase-corrected) output-mode state and the input.
  double fidelity = 0;
  // Raw fidelity without undoing the deterministic swap phase.
  double raw_fidelity = 0;
  // |<a_out>/alpha_in|^2; empty for vacuum/Fock inputs (alpha_in = 0).
  std::optional<double> efficiency;
  // Output-mode occupation minus the ideal image of the input
  // (can be negative under loss).
  double added_noise = 0;
  NoiseBudget budget;
  std::string engine;
  double duration_s = 0;
};

// Equal rates: t* = pi / (sqrt(2) Gamma), the end-to-end swap time of the
// three-mode chain (eigenvalues 0, +-sqrt(2) Gamma; end-mode amplitude -1).
// Unequal rates: first maximum of the end-mode population, located by a
// 2048-point scan over [0, 4 pi / min(Gamma)] plus golden-section refinement.
double ideal_swap_time(double Gamma_EM, double Gamma_OM);

enum class TransferEngine { gaussian, oracle };

struct TransferOptions {
  // Oracle truncation per mode, order [input cavity, mech, output cavity].
  std::vector<int> oracle_dims = {8, 8, 8};
};

// Evolves the vacuum-except-input initial state for protocol.duration and
// reports fidelity/efficiency/added noise plus the rate budget. The gaussian
// engine uses the rwa linearized model (coherent or vacuum inputs only);
// the oracle engine integrates the Lindblad equation in the same frame.
TransferResult simulate_transfer(const HybridSystem& system,
                                 const TransferProtocol& protocol,
                                 TransferEngine engine,
                                 const TransferOptions& opt = {});

// Ordered rate comparisons of the protocol inequalities.
struct FeasibilityEntry {
  std::string name;
  double lhs;
  double rhs;
  bool pass;
};
struct FeasibilityReport {
  std::vector<FeasibilityEntry> entries;
  bool all_pass = false;
};
FeasibilityReport transfer_feasibility(const HybridSystem& system);

}  // namespace cavitymech
