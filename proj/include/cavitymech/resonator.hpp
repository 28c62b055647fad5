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

#include <vector>

#include "cavitymech/types.hpp"

namespace cavitymech {

// Doubly clamped rectangular beam under axial tensile stress.
struct BeamSpec {
  double length = 0;          // m
  double width = 0;           // m
  double thickness = 0;       // m (bending direction)
  double youngs_modulus = 0;  // Pa
  double density = 0;         // kg/m^3
  double stress = 0;          // Pa, >= 0

  double area() const { return width * thickness; }
  double bending_moment() const {
    return width * thickness * thickness * thickness / 12.0;
  }
  double axial_load() const { return stress * area(); }
  void validate() const;
};

// n-th eigenfrequency (Hz, n >= 1) of E I w'''' - N w'' = rho A omega^2 w with
// clamped ends, by bracketed scanning of the characteristic equation plus
// Brent refinement (relative root tolerance 1e-10). Limits: the zero-tension
// flexural closed form (lambda_1 = 4.7300407...) and, at dimensionless
// tension N L^2/(E I) >~ 1e4, the string formula (n/2L) sqrt(sigma/rho).
double beam_frequency(const BeamSpec& spec, int n = 1);

// Clamped-clamped eigenfunction on x_grid (positions in [0, L]), normalized
// to unit maximum deflection with positive sign at the largest antinode.
std::vector<double> mode_shape(const BeamSpec& spec, int n,
                               const std::vector<double>& x_grid);

// Fundamental-mode summary for a candidate device. Effective mass convention:
// rho A L / 2 (string-limit modal mass), used consistently for x_zp and S_F.
struct DesignReport {
  double f1_Hz = 0;
  double Qf_Hz = 0;
  bool quantum_enabled = false;
  double threshold_Hz = 0;
  double effective_mass_kg = 0;
  double x_zp_m = 0;
  double S_F = 0;  // N^2/Hz
};
DesignReport design_report(const BeamSpec& spec, double mechanical_Q,
                           double T_bath);

}  // namespace cavitymech
