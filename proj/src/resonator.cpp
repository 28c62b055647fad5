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

#include "cavitymech/resonator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavitymech/constants.hpp"
#include "cavitymech/model.hpp"
#include "cavitymech/roots.hpp"

namespace cavitymech {

namespace {

constexpr double lambda1 = 4.7300407448627;  // root of cos(x) cosh(x) = 1

struct Wavenumbers {
  double k1;  // evanescent
  double k2;  // oscillatory
};

// E I k^4 -+ N k^2 - rho A omega^2 = 0 gives one real-exponential and one
// oscillatory branch.
Wavenumbers wavenumbers(const BeamSpec& spec, double omega) {
  const double EI = spec.youngs_modulus * spec.bending_moment();
  const double s = spec.axial_load() / (2.0 * EI);
  const double r =
      std::sqrt(s * s + spec.density * spec.area() * omega * omega / EI);
  return {std::sqrt(r + s), std::sqrt(r - s)};
}

// Clamped-clamped determinant condition
//   1 - cos(k2 L) cosh(k1 L) + ((k1^2-k2^2)/(2 k1 k2)) sin(k2 L) sinh(k1 L) = 0,
// divided by cosh(k1 L) so large-tension arguments stay finite (1/cosh
// underflows to 0, tanh saturates at 1).
double characteristic(const BeamSpec& spec, double omega) {
  if (omega <= 0) return -1.0;
  const auto [k1, k2] = wavenumbers(spec, omega);
  const double x1 = k1 * spec.length;
  const double x2 = k2 * spec.length;
  return 1.0 / std::cosh(x1) - std::cos(x2) +
         ((k1 * k1 - k2 * k2) / (2.0 * k1 * k2)) * std::sin(x2) * std::tanh(x1);
}

double flexural_f1(const BeamSpec& spec) {
  return lambda1 * lambda1 / (two_pi * spec.length * spec.length) *
         std::sqrt(spec.youngs_modulus * spec.bending_moment() /
                   (spec.density * spec.area()));
}

double string_f1(const BeamSpec& spec, double stress_floor) {
  return std::sqrt(std::max(spec.stress, stress_floor) / spec.density) /
         (2.0 * spec.length);
}

}  // namespace

void BeamSpec::validate() const {
  auto pos = [](double x) { return std::isfinite(x) && x > 0; };
  if (!pos(length)) throw ConfigError("beam: length must be positive");
  if (!pos(width)) throw ConfigError("beam: width must be positive");
  if (!pos(thickness)) throw ConfigError("beam: thickness must be positive");
  if (!pos(youngs_modulus))
    throw ConfigError("beam: youngs_modulus must be positive");
  if (!pos(density)) throw ConfigError("beam: density must be positive");
  if (!(std::isfinite(stress) && stress >= 0))
    throw ConfigError("beam: stress must be >= 0");
}

double beam_frequency(const BeamSpec& spec, int n) {
  spec.validate();
  if (n < 1) throw ConfigError("beam_frequency: mode index must be >= 1");

  // Scan step from the tighter of the flexural and string mode spacings.
  const double df = 0.1 * std::min(flexural_f1(spec), string_f1(spec, 1e3));
  auto fn = [&](double f) { return characteristic(spec, two_pi * f); };

  int found = 0;
  double f = df, prev = fn(f);
  const long max_steps = 20000000L;
  for (long step = 0; step < max_steps; ++step) {
    const double f2 = f + df;
    const double cur = fn(f2);
    if (prev * cur < 0 || cur == 0) {
      const double root = brent_root(fn, f, f2, 1e-12);
      if (++found == n) return root;
    }
    f = f2;
    prev = cur;
  }
  std::ostringstream os;
  os << "beam_frequency: found only " << found << " of " << n
     << " roots scanning up to " << f << " Hz";
  throw NumericalError(os.str());
}

std::vector<double> mode_shape(const BeamSpec& spec, int n,
                               const std::vector<double>& x_grid) {
  const double omega = two_pi * beam_frequency(spec, n);
  const auto [k1, k2] = wavenumbers(spec, omega);
  const double L = spec.length;

  // Basis {exp(-k1 x), exp(-k1 (L-x)), cos(k2 x), sin(k2 x)}: decaying
  // exponentials from either end keep the boundary system well conditioned
  // at high tension.
  auto eval = [&](double x, const Eigen::Vector4d& c) {
    return c(0) * std::exp(-k1 * x) + c(1) * std::exp(-k1 * (L - x)) +
           c(2) * std::cos(k2 * x) + c(3) * std::sin(k2 * x);
  };

  Eigen::Matrix4d bc;
  const double e = std::exp(-k1 * L);
  bc << 1, e, 1, 0,                                        // w(0) = 0
      -k1, k1 * e, 0, k2,                                  // w'(0) = 0
      e, 1, std::cos(k2 * L), std::sin(k2 * L),            // w(L) = 0
      -k1 * e, k1, -k2 * std::sin(k2 * L), k2 * std::cos(k2 * L);  // w'(L) = 0

  Eigen::JacobiSVD<Eigen::Matrix4d> svd(bc, Eigen::ComputeFullV);
  const Eigen::Vector4d c = svd.matrixV().col(3);

  std::vector<double> shape;
  shape.reserve(x_grid.size());
  double peak = 0;
  for (double x : x_grid) {
    if (!(x >= 0 && x <= L))
      throw ConfigError("mode_shape: grid point outside [0, L]");
    const double v = eval(x, c);
    shape.push_back(v);
    if (std::abs(v) > std::abs(peak)) peak = v;
  }
  if (peak != 0)
    for (double& v : shape) v /= peak;
  return shape;
}

DesignReport design_report(const BeamSpec& spec, double mechanical_Q,
                           double T_bath) {
  spec.validate();
  if (!(std::isfinite(mechanical_Q) && mechanical_Q > 0))
    throw ConfigError("design_report: Q must be positive");
  if (!(std::isfinite(T_bath) && T_bath >= 0))
    throw ConfigError("design_report: T_bath must be >= 0");

  DesignReport report;
  report.f1_Hz = beam_frequency(spec, 1);
  report.effective_mass_kg = spec.density * spec.area() * spec.length / 2.0;

  MechanicalMode mech;
  mech.omega_m = two_pi * report.f1_Hz;
  mech.gamma_m = mech.omega_m / mechanical_Q;
  mech.mass = report.effective_mass_kg;
  mech.T_bath = T_bath;

  report.Qf_Hz = mechanical_Q * report.f1_Hz;
  const QuantumEnabled qe = quantum_enabled(mech);
  report.quantum_enabled = qe.enabled;
  report.threshold_Hz = qe.threshold_Hz;
  report.x_zp_m = zero_point_motion(mech);
  report.S_F = thermal_force_psd(mech);
  return report;
}

}  // namespace cavitymech
