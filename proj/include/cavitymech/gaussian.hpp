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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cavitymech/types.hpp"

namespace cavitymech {

// Quadrature convention: q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
// ordering (q_1, p_1, ..., q_N, p_N), vacuum variance 1/2. Mean quadratures
// are dimensionless; mechanical displacement is x = x_zp * sqrt(2) * q_mech.
struct GaussianState {
  Eigen::VectorXd mean;  // length 2N
  Eigen::MatrixXd cov;   // 2N x 2N
  std::vector<std::string> mode_labels;

  int modes() const { return static_cast<int>(mode_labels.size()); }
  // Symmetry and the uncertainty bound cov + (i/2) Omega >= 0
  // (min eigenvalue tolerance -1e-9).
  void validate() const;
};

// Vacuum in every mode.
GaussianState vacuum_state(const std::vector<std::string>& labels);

// d/dt u = drift u ; d/dt V = drift V + V drift^T + diffusion. Units rad/s.
struct LinearModel {
  Eigen::MatrixXd drift;
  Eigen::MatrixXd diffusion;
  std::vector<std::string> mode_labels;

  int modes() const { return static_cast<int>(mode_labels.size()); }
};

// Linearized dynamics of the driven system about the displaced steady state.
// rwa=false: full model in each drive's rotating frame; cavity quadratures
// couple to the mechanical position with strength 2*Gamma. rwa=true:
// beamsplitter-only model in the interaction frame (requires every detuning
// within 10% of omega_m). The interaction-term sign enters through
// DrivenCavity::sign(). Mechanical bath occupation uses the linear
// (high-temperature) convention.
LinearModel linearize(const HybridSystem& system, bool rwa);

// Steady covariance from the Lyapunov equation; drift must be Hurwitz
// (InstabilityError names the offending eigenvalue otherwise). Residual
// bound: |A V + V A^T + D|_F <= 1e-10 |D|_F, checked on every call.
GaussianState steady_state(const LinearModel& model);

// n = (V_qq + V_pp - 1)/2 for the selected mode; the mean field is excluded.
double phonon_number(const GaussianState& state, int mode_index);

// Mean photon number including the mean field: n + |u|^2/2.
double mode_occupation(const GaussianState& state, int mode_index);

// Adaptive integration of means and covariance over a strictly increasing
// time grid; covariance re-symmetrized after every accepted step; every
// output satisfies the GaussianState invariants.
struct EvolveOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
};
std::vector<GaussianState> evolve(const LinearModel& model,
                                  const GaussianState& state0,
                                  const std::vector<double>& t_grid,
                                  const EvolveOptions& opt = {});

// Symplectic eigenvalues of a 2N x 2N covariance (moduli of the eigenvalues
// of i Omega V), ascending. Physical states have all values >= 1/2.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

// One-sided displacement PSD in ordinary frequency,
//   S_x(f) = S_F / (m^2 [(omega_m^2 - omega^2)^2 + gamma_m^2 omega^2]) + floor,
// omega = 2 pi f, S_F = 4 m gamma_m k_B T. Integrates to k_B T/(m omega_m^2).
struct SpectrumSeries {
  std::vector<double> freq_Hz;
  std::vector<double> S_x;  // m^2/Hz
};
SpectrumSeries displacement_spectrum(const MechanicalMode& mech, double T,
                                     const std::vector<double>& freq_grid_Hz,
                                     double imprecision_floor = 0);

// Uhlmann fidelity of two single-mode Gaussian states
// (u, V in the convention above):
//   F = 2 exp(-1/2 du^T (V1+V2)^{-1} du) / (sqrt(L + d) - sqrt(d)),
//   L = 4 det(V1+V2), d = (4 det V1 - 1)(4 det V2 - 1).
double gaussian_fidelity(const Eigen::Vector2d& mean1, const Eigen::Matrix2d& cov1,
                         const Eigen::Vector2d& mean2, const Eigen::Matrix2d& cov2);

}  // namespace cavitymech
