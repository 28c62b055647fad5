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

#include <numbers>

namespace cavitymech {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// SI defining constants (exact by definition).
struct PhysicalConstants {
  double h;     // Planck constant, J*s
  double hbar;  // reduced Planck constant, J*s
  double k_B;   // Boltzmann constant, J/K
  double c;     // speed of light, m/s
};

inline constexpr PhysicalConstants constants{
    6.62607015e-34,
    6.62607015e-34 / two_pi,
    1.380649e-23,
    299792458.0,
};

}  // namespace cavitymech
