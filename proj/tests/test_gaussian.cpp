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

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "cavitymech/constants.hpp"
#include "cavitymech/fock.hpp"
#include "cavitymech/gaussian.hpp"
#include "cavitymech/model.hpp"

using namespace cavitymech;

namespace {

HybridSystem cooling_system(double gamma_over_2pi, double Gamma_over_2pi,
                            double n_bath, double gamma_m_over_2pi = 100.0) {
  HybridSystem sys;
  sys.mech.omega_m = two_pi * 1e7;
  sys.mech.gamma_m = two_pi * gamma_m_over_2pi;
  sys.mech.mass = 1e-15;
  sys.mech.T_bath =
      n_bath * constants.hbar * sys.mech.omega_m / constants.k_B;
  DrivenCavity dc;
  dc.cavity.band = Band::optical;
  dc.cavity.gamma = two_pi * gamma_over_2pi;
  dc.cavity.gamma_ext = dc.cavity.gamma;
  dc.cavity.g = 1.0;
  dc.drive.detuning = sys.mech.omega_m;
  const double x_zp = zero_point_motion(sys.mech);
  const double Gamma = two_pi * Gamma_over_2pi;
  dc.drive.n_photons = (Gamma / x_zp) * (Gamma / x_zp);
  sys.cavities = {dc};
  return sys;
}

}  // namespace

TEST_CASE("vacuum state has covariance I/2") {
  const GaussianState vac = vacuum_state({"microwave", "mech"});
  CHECK(vac.modes() == 2);
  CHECK(vac.mean.norm() == 0.0);
  CHECK((vac.cov - 0.5 * Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
  vac.validate();
}

TEST_CASE("full-model drift and diffusion blocks") {
  HybridSystem sys = cooling_system(5e5, 5e4, 1.0);
  const double Gamma = manyphoton_coupling(sys.mech, sys.cavities[0].cavity,
                                           sys.cavities[0].drive);
  const double Delta = sys.cavities[0].drive.detuning;
  const double gamma = sys.cavities[0].cavity.gamma;
  const double n_bath = thermal_occupation(sys.mech);

  const LinearModel model = linearize(sys, false);
  REQUIRE(model.drift.rows() == 4);
  CHECK(model.mode_labels[0] == "optical");
  CHECK(model.mode_labels[1] == "mech");

  const Eigen::MatrixXd& A = model.drift;
  CHECK(A(0, 0) == doctest::Approx(-gamma / 2).epsilon(1e-12));
  CHECK(A(0, 1) == doctest::Approx(Delta).epsilon(1e-12));
  CHECK(A(1, 0) == doctest::Approx(-Delta).epsilon(1e-12));
  CHECK(A(2, 2) == doctest::Approx(-sys.mech.gamma_m / 2).epsilon(1e-12));
  CHECK(A(2, 3) == doctest::Approx(sys.mech.omega_m).epsilon(1e-12));
  // Position-only interaction: cavity p couples to mechanical q and
  // vice versa, with strength 2 Gamma and the band sign (+1 optical).
  CHECK(A(1, 2) == doctest::Approx(-2.0 * Gamma).epsilon(1e-12));
  CHECK(A(3, 0) == doctest::Approx(-2.0 * Gamma).epsilon(1e-12));
  CHECK(A(0, 2) == 0.0);
  CHECK(A(2, 0) == 0.0);

  const Eigen::MatrixXd& D = model.diffusion;
  CHECK(D(0, 0) == doctest::Approx(gamma * 0.5).epsilon(1e-12));
  CHECK(D(2, 2) ==
        doctest::Approx(sys.mech.gamma_m * (n_bath + 0.5)).epsilon(1e-12));
  CHECK(D(0, 2) == 0.0);
}

TEST_CASE("rwa model blocks and the detuning guard") {
  HybridSystem sys = cooling_system(5e5, 5e4, 1.0);
  const double Gamma = manyphoton_coupling(sys.mech, sys.cavities[0].cavity,
                                           sys.cavities[0].drive);
  const LinearModel model = linearize(sys, true);
  const Eigen::MatrixXd& A = model.drift;
  // Detuning matched: no rotation left in the cavity block.
  CHECK(A(0, 1) == doctest::Approx(0.0));
  // Beamsplitter coupling Gamma J in the off-diagonal blocks.
  CHECK(A(0, 3) == doctest::Approx(Gamma).epsilon(1e-12));
  CHECK(A(1, 2) == doctest::Approx(-Gamma).epsilon(1e-12));

  sys.cavities[0].drive.detuning = 1.2 * sys.mech.omega_m;
  CHECK_THROWS_AS(linearize(sys, true), ConfigError);
}

TEST_CASE("decoupled steady state thermalizes each mode to its own bath") {
  HybridSystem sys = cooling_system(5e5, 5e4, 2.5);
  sys.cavities[0].cavity.g = 0.0;
  sys.cavities[0].drive.n_photons = 0.0;
  sys.cavities[0].cavity.n_thermal = 0.3;
  const double n_bath = thermal_occupation(sys.mech);

  const GaussianState steady = steady_state(linearize(sys, false));
  CHECK(phonon_number(steady, 1) == doctest::Approx(n_bath).epsilon(1e-10));
  CHECK(phonon_number(steady, 0) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(steady.mean.norm() == 0.0);
}

TEST_CASE("known sideband-cooling operating point") {
  const HybridSystem sys = cooling_system(5e5, 5e4, 1.0);
  const GaussianState steady = steady_state(linearize(sys, false));
  CHECK(phonon_number(steady, 1) ==
        doctest::Approx(0.0053428108).epsilon(1e-6));
}

TEST_CASE("blue detuning at strong drive is unstable") {
  HybridSystem sys = cooling_system(5e5, 2e5, 1.0);
  sys.cavities[0].drive.detuning = -sys.mech.omega_m;
  CHECK_THROWS_AS(steady_state(linearize(sys, false)), InstabilityError);
}

TEST_CASE("time evolution relaxes to the lyapunov steady state") {
  const HybridSystem sys = cooling_system(5e5, 5e4, 1.0, 1e4);
  const LinearModel model = linearize(sys, false);
  const GaussianState steady = steady_state(model);

  GaussianState hot = vacuum_state(model.mode_labels);
  hot.cov.block<2, 2>(2, 2) = 3.0 * Eigen::Matrix2d::Identity();

  const double rate = 4.0 * std::pow(two_pi * 5e4, 2) / (two_pi * 5e5);
  const auto states = evolve(model, hot, {0.0, 12.0 / rate});
  const GaussianState& fin = states.back();
  CHECK((fin.cov - steady.cov).norm() / steady.cov.norm() < 1e-5);
}

TEST_CASE("mean-field precession of a detuned cavity") {
  HybridSystem sys = cooling_system(1e5, 0.0, 0.0);
  sys.cavities[0].cavity.g = 0.0;
  const double Delta = sys.cavities[0].drive.detuning;
  const double gamma = sys.cavities[0].cavity.gamma;
  const LinearModel model = linearize(sys, false);

  GaussianState state0 = vacuum_state(model.mode_labels);
  state0.mean(0) = 1.0;
  const double t = 3.0 / gamma;
  const auto states = evolve(model, state0, {0.0, t});
  const double damp = std::exp(-0.5 * gamma * t);
  CHECK(states.back().mean(0) ==
        doctest::Approx(damp * std::cos(Delta * t)).epsilon(1e-6));
  CHECK(states.back().mean(1) ==
        doctest::Approx(-damp * std::sin(Delta * t)).epsilon(1e-6));
}

TEST_CASE("mode occupation counts the mean field") {
  GaussianState state = vacuum_state({"mech"});
  state.mean << 1.0, 1.0;
  CHECK(phonon_number(state, 0) == doctest::Approx(0.0));
  CHECK(mode_occupation(state, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symplectic eigenvalues of reference covariances") {
  const Eigen::MatrixXd vac = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  CHECK(symplectic_eigenvalues(vac)(0) == doctest::Approx(0.5).epsilon(1e-12));

  Eigen::MatrixXd thermal = 2.5 * Eigen::MatrixXd::Identity(2, 2);
  CHECK(symplectic_eigenvalues(thermal)(0) ==
        doctest::Approx(2.5).epsilon(1e-12));

  Eigen::MatrixXd squeezed(2, 2);
  squeezed << 0.5 * std::exp(-1.2), 0.0, 0.0, 0.5 * std::exp(1.2);
  CHECK(symplectic_eigenvalues(squeezed)(0) ==
        doctest::Approx(0.5).epsilon(1e-12));

  Eigen::MatrixXd two_mode = Eigen::MatrixXd::Zero(4, 4);
  two_mode.block<2, 2>(0, 0) = 3.5 * Eigen::Matrix2d::Identity();
  two_mode.block<2, 2>(2, 2) = 1.5 * Eigen::Matrix2d::Identity();
  const Eigen::VectorXd nu = symplectic_eigenvalues(two_mode);
  CHECK(nu(0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(nu(1) == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("displacement spectrum peak, floor, and equipartition") {
  MechanicalMode mech;
  mech.omega_m = two_pi * 1e6;
  mech.gamma_m = mech.omega_m / 1000.0;
  mech.mass = 1e-14;
  mech.T_bath = 4.0;

  const double S_F = thermal_force_psd(mech);
  const double peak_expected =
      S_F / (mech.mass * mech.mass * mech.gamma_m * mech.gamma_m *
             mech.omega_m * mech.omega_m);
  const double floor = 1e-36;
  const auto peak = displacement_spectrum(mech, mech.T_bath, {1e6}, floor);
  CHECK(peak.S_x[0] == doctest::Approx(peak_expected + floor).epsilon(1e-12));

  const auto cold = displacement_spectrum(mech, 0.0, {1e6, 2e6}, floor);
  CHECK(cold.S_x[0] == doctest::Approx(floor).epsilon(1e-12));

  // Equipartition: integral of the PSD equals k_B T / (m omega_m^2).
  std::vector<double> grid;
  const double f_m = 1e6;
  const double half_width = 40.0 * f_m / 1000.0;  // 40 linewidths
  for (int i = 0; i <= 400; ++i)
    grid.push_back(f_m / 100.0 * std::pow(100.0 * (f_m - half_width) / f_m,
                                          i / 400.0));
  for (int i = 1; i <= 8000; ++i)
    grid.push_back(f_m - half_width + 2.0 * half_width * i / 8001.0);
  for (int i = 0; i <= 400; ++i)
    grid.push_back((f_m + half_width) *
                   std::pow(100.0 * f_m / (f_m + half_width), i / 400.0));
  const auto series = displacement_spectrum(mech, mech.T_bath, grid, 0.0);
  double integral = 0.0;
  for (size_t i = 1; i < grid.size(); ++i)
    integral += 0.5 * (series.S_x[i] + series.S_x[i - 1]) *
                (series.freq_Hz[i] - series.freq_Hz[i - 1]);
  const double expected =
      constants.k_B * mech.T_bath / (mech.mass * mech.omega_m * mech.omega_m);
  CHECK(integral == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("gaussian fidelity closed form on coherent states") {
  const Eigen::Matrix2d vac = 0.5 * Eigen::Matrix2d::Identity();
  const Eigen::Vector2d zero = Eigen::Vector2d::Zero();
  CHECK(gaussian_fidelity(zero, vac, zero, vac) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const double delta = 0.7;  // amplitude offset between two coherent states
  Eigen::Vector2d shifted(std::sqrt(2.0) * delta, 0.0);
  const double f = gaussian_fidelity(zero, vac, shifted, vac);
  CHECK(f == doctest::Approx(std::exp(-delta * delta)).epsilon(1e-12));
  CHECK(gaussian_fidelity(shifted, vac, zero, vac) ==
        doctest::Approx(f).epsilon(1e-12));
}

TEST_CASE("gaussian fidelity matches the fock-space uhlmann fidelity") {
  // 50 random displaced squeezed thermal pairs; the closed form must track
  // the density-matrix computation far inside 1e-3.
  std::mt19937 rng(20260823);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int dim = 40;
  fock::FockSpec spec{{dim}, {"mech"}};

  const fock::SpMat a_sp = fock::destroy_op(spec, 0);
  const Eigen::MatrixXcd a = Eigen::MatrixXcd(a_sp);
  const Eigen::MatrixXcd adag = a.adjoint();

  auto build = [&](double n_bar, std::complex<double> alpha, double r,
                   Eigen::Vector2d& mean, Eigen::Matrix2d& cov) {
    fock::DensityOperator rho = fock::thermal_state(spec, 0, n_bar);
    const Eigen::MatrixXcd S = (0.5 * r * (a * a - adag * adag)).exp();
    const Eigen::MatrixXcd D =
        (alpha * adag - std::conj(alpha) * a).exp();
    rho.rho = D * S * rho.rho * S.adjoint() * D.adjoint();
    mean << std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag();
    cov.setZero();
    cov(0, 0) = (n_bar + 0.5) * std::exp(-2.0 * r);
    cov(1, 1) = (n_bar + 0.5) * std::exp(2.0 * r);
    return rho;
  };

  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector2d m1, m2;
    Eigen::Matrix2d v1, v2;
    const auto rho1 =
        build(1.5 * u01(rng),
              {u01(rng) - 0.5, u01(rng) - 0.5}, 0.8 * u01(rng) - 0.4, m1, v1);
    const auto rho2 =
        build(1.5 * u01(rng),
              {u01(rng) - 0.5, u01(rng) - 0.5}, 0.8 * u01(rng) - 0.4, m2, v2);
    const double f_closed = gaussian_fidelity(m1, v1, m2, v2);
    const double f_fock = fock::fidelity(rho1, rho2);
    worst = std::max(worst, std::abs(f_closed - f_fock));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("gaussian state validation rejects unphysical inputs") {
  GaussianState state = vacuum_state({"mech"});
  state.cov(0, 1) = 0.2;  // asymmetric
  CHECK_THROWS_AS(state.validate(), NumericalError);

  state = vacuum_state({"mech"});
  state.cov = 0.3 * Eigen::MatrixXd::Identity(2, 2);  // below vacuum
  CHECK_THROWS_AS(state.validate(), NumericalError);
}
