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

#include <doctest.h>

#include "cavitymech/constants.hpp"
#include "cavitymech/model.hpp"

using namespace cavitymech;

namespace {

MechanicalMode standard_mech() {
  MechanicalMode mech;
  mech.omega_m = two_pi * 1e7;
  mech.gamma_m = two_pi * 100.0;
  mech.mass = 1e-15;
  mech.T_bath = 0.05;
  return mech;
}

}  // namespace

TEST_CASE("zero-point motion of the standard mode") {
  const double x_zp = zero_point_motion(standard_mech());
  CHECK(x_zp == doctest::Approx(2.89689763042976e-14).epsilon(1e-12));
}

TEST_CASE("thermal occupation, linear and Bose-Einstein") {
  MechanicalMode mech = standard_mech();
  CHECK(thermal_occupation(mech, OccupationModel::linear) ==
        doctest::Approx(104.183095616638).epsilon(1e-12));
  CHECK(thermal_occupation(mech, OccupationModel::bose_einstein) ==
        doctest::Approx(103.683895489255).epsilon(1e-12));
  mech.T_bath = 0.0;
  CHECK(thermal_occupation(mech, OccupationModel::linear) == 0.0);
  CHECK(thermal_occupation(mech, OccupationModel::bose_einstein) == 0.0);
}

TEST_CASE("linear occupation exceeds Bose-Einstein by half a quantum at high T") {
  MechanicalMode mech = standard_mech();
  mech.T_bath = 10.0;
  const double lin = thermal_occupation(mech, OccupationModel::linear);
  const double be = thermal_occupation(mech, OccupationModel::bose_einstein);
  CHECK(lin - be == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("moving-mirror coupling at 1 um in a 1 mm cavity") {
  const double g = mirror_coupling(1e-6, 1e-3);
  CHECK(g == doctest::Approx(1.88365156730885e18).epsilon(1e-12));
  // 299.792 kHz of cavity shift per pm of displacement
  CHECK(g / two_pi * 1e-12 == doctest::Approx(299792.458).epsilon(1e-12));
  // halves when the wavelength doubles
  CHECK(mirror_coupling(2e-6, 1e-3) == doctest::Approx(0.5 * g).epsilon(1e-12));
}

TEST_CASE("intracavity photons from input power") {
  CavityMode cavity;
  cavity.band = Band::microwave;
  cavity.omega_c = two_pi * 7.001e9;  // drive lands at 7 GHz
  cavity.gamma = two_pi * 1e6;
  cavity.gamma_ext = two_pi * 0.5e6;
  Drive drive;
  drive.detuning = two_pi * 1e6;
  drive.input_power = 1e-12;
  CHECK(intracavity_photons(cavity, drive) ==
        doctest::Approx(13725.4329803311).epsilon(1e-10));
}

TEST_CASE("intracavity photons passthrough and resonant limit") {
  CavityMode cavity;
  cavity.omega_c = two_pi * 7e9;
  cavity.gamma = two_pi * 1e6;
  cavity.gamma_ext = cavity.gamma;
  Drive drive;
  drive.n_photons = 1e6;
  CHECK(intracavity_photons(cavity, drive) == 1e6);

  drive.n_photons.reset();
  drive.input_power = 1e-12;
  drive.detuning = 0.0;
  const double expected =
      4.0 * 1e-12 / (constants.hbar * cavity.omega_c * cavity.gamma);
  CHECK(intracavity_photons(cavity, drive) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("many-photon coupling scales as the square root of photon number") {
  const MechanicalMode mech = standard_mech();
  CavityMode cavity;
  cavity.gamma = two_pi * 1e6;
  cavity.gamma_ext = cavity.gamma;
  cavity.g = two_pi * 5e16;  // 50 kHz per pm
  Drive drive;
  drive.detuning = mech.omega_m;
  drive.n_photons = 1e6;
  const double Gamma = manyphoton_coupling(mech, cavity, drive);
  CHECK(Gamma / two_pi == doctest::Approx(1.448e6).epsilon(2e-3));
  drive.n_photons = 4e6;
  CHECK(manyphoton_coupling(mech, cavity, drive) ==
        doctest::Approx(2.0 * Gamma).epsilon(1e-12));
  drive.n_photons = 0.0;
  CHECK(manyphoton_coupling(mech, cavity, drive) == 0.0);
}

TEST_CASE("cooling rate and the matched-detuning flag") {
  const MechanicalMode mech = standard_mech();
  CavityMode cavity;
  cavity.gamma = two_pi * 5e5;
  cavity.gamma_ext = cavity.gamma;
  cavity.g = 1.0;
  Drive drive;
  drive.detuning = mech.omega_m;
  const double x_zp = zero_point_motion(mech);
  const double Gamma = two_pi * 5e4;
  drive.n_photons = (Gamma / x_zp) * (Gamma / x_zp);

  const CoolingRate rate = cooling_rate(mech, cavity, drive);
  CHECK(rate.detuning_matched);
  CHECK(rate.rate ==
        doctest::Approx(4.0 * Gamma * Gamma / cavity.gamma).epsilon(1e-9));

  Drive off = drive;
  off.detuning = 1.01 * mech.omega_m;
  CHECK_FALSE(cooling_rate(mech, cavity, off).detuning_matched);
}

TEST_CASE("final occupation models") {
  MechanicalMode mech = standard_mech();
  const double n_bath = thermal_occupation(mech);
  const double rate = two_pi * 2e4;
  CHECK(final_occupation(mech, rate, FinalOccupationModel::ratio) ==
        doctest::Approx(mech.gamma_m * n_bath / rate).epsilon(1e-12));
  CHECK(final_occupation(mech, rate, FinalOccupationModel::rate_balance) ==
        doctest::Approx(mech.gamma_m * n_bath / (mech.gamma_m + rate))
            .epsilon(1e-12));
  CHECK(final_occupation(mech, 0.0, FinalOccupationModel::rate_balance) ==
        doctest::Approx(n_bath).epsilon(1e-12));
  CHECK_THROWS_AS(final_occupation(mech, 0.0, FinalOccupationModel::ratio),
                  ConfigError);
}

TEST_CASE("quantum-enabled thresholds at reference temperatures") {
  MechanicalMode mech = standard_mech();
  mech.T_bath = 300.0;
  CHECK(quantum_enabled(mech).threshold_Hz ==
        doctest::Approx(6250985736998.27).epsilon(1e-10));
  mech.T_bath = 4.0;
  CHECK(quantum_enabled(mech).threshold_Hz ==
        doctest::Approx(83346476493.3103).epsilon(1e-10));
  mech.T_bath = 0.05;
  const QuantumEnabled qe = quantum_enabled(mech);
  CHECK(qe.threshold_Hz == doctest::Approx(1041830956.16638).epsilon(1e-10));
  // Q f = 1e5 * 1e7 = 1e12 > 1.04e9
  CHECK(qe.qf_product_Hz == doctest::Approx(1e12).epsilon(1e-12));
  CHECK(qe.enabled);
}

TEST_CASE("detection efficiency") {
  DetectionChain chain;
  chain.n_add = 30.0;
  CHECK(detection_efficiency(chain) ==
        doctest::Approx(0.0163934426229508).epsilon(1e-12));
  chain.n_add = 0.0;
  CHECK(detection_efficiency(chain) == 1.0);
  chain.n_add = 0.5;
  CHECK(detection_efficiency(chain) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("thermal force spectral density") {
  MechanicalMode mech;
  mech.omega_m = two_pi * 1e7;
  mech.gamma_m = two_pi * 10.0;
  mech.mass = 1e-15;
  mech.T_bath = 300.0;
  CHECK(thermal_force_psd(mech) ==
        doctest::Approx(1.04098482134066e-33).epsilon(1e-10));
  MechanicalMode doubled = mech;
  doubled.gamma_m *= 2.0;
  CHECK(thermal_force_psd(doubled) ==
        doctest::Approx(2.0 * thermal_force_psd(mech)).epsilon(1e-12));
  mech.T_bath = 0.0;
  CHECK(thermal_force_psd(mech) == 0.0);
}

TEST_CASE("record validation rejects bad fields") {
  MechanicalMode mech = standard_mech();
  mech.omega_m = -1.0;
  CHECK_THROWS_AS(mech.validate(), ConfigError);

  CavityMode cavity;
  cavity.gamma = two_pi * 1e5;
  cavity.gamma_ext = two_pi * 2e5;  // exceeds gamma
  CHECK_THROWS_AS(cavity.validate(), ConfigError);

  Drive drive;  // neither power nor photon number
  CHECK_THROWS_AS(drive.validate(), ConfigError);
  drive.input_power = 1e-9;
  drive.n_photons = 10.0;  // both
  CHECK_THROWS_AS(drive.validate(), ConfigError);
}

TEST_CASE("system validation and mode ordering") {
  HybridSystem sys;
  sys.mech = standard_mech();
  DrivenCavity em;
  em.cavity.band = Band::microwave;
  em.cavity.gamma = two_pi * 1e5;
  em.cavity.gamma_ext = em.cavity.gamma;
  em.drive.detuning = sys.mech.omega_m;
  em.drive.n_photons = 1e6;
  DrivenCavity om = em;
  om.cavity.band = Band::optical;
  sys.cavities = {em, om};
  sys.validate();

  const auto labels = sys.mode_labels();
  REQUIRE(labels.size() == 3);
  CHECK(labels[0] == "microwave");
  CHECK(labels[1] == "mech");
  CHECK(labels[2] == "optical");
  CHECK(sys.cavity_index(Band::microwave) == 0);
  CHECK(sys.cavity_index(Band::optical) == 1);

  CHECK(sys.cavities[0].sign() == -1.0);
  CHECK(sys.cavities[1].sign() == +1.0);
  sys.cavities[0].em_sign = +1.0;
  CHECK(sys.cavities[0].sign() == +1.0);

  sys.cavities[1].cavity.band = Band::microwave;  // duplicate band
  CHECK_THROWS_AS(sys.validate(), ConfigError);
  sys.cavities = {};
  CHECK_THROWS_AS(sys.validate(), ConfigError);
}

TEST_CASE("regime classification on a resolved-sideband scenario") {
  HybridSystem sys;
  sys.mech = standard_mech();
  DrivenCavity dc;
  dc.cavity.band = Band::optical;
  dc.cavity.gamma = two_pi * 5e5;
  dc.cavity.gamma_ext = dc.cavity.gamma;
  dc.cavity.g = 1.0;
  dc.drive.detuning = sys.mech.omega_m;
  const double x_zp = zero_point_motion(sys.mech);
  const double Gamma = two_pi * 5e4;
  dc.drive.n_photons = (Gamma / x_zp) * (Gamma / x_zp);
  sys.cavities = {dc};

  const RegimeReport report = classify_regimes(sys);
  CHECK(report.resolved_sideband.satisfied);
  CHECK(report.resolved_sideband.lhs == doctest::Approx(sys.mech.omega_m));
  CHECK_FALSE(report.strong_coupling.satisfied);  // Gamma < gamma here
  CHECK_FALSE(report.bistability_risk.satisfied);
  CHECK(report.quantum.enabled);

  // Push the drive to the bistability boundary.
  const double Gamma_big = 0.6 * sys.mech.omega_m;
  sys.cavities[0].drive.n_photons = (Gamma_big / x_zp) * (Gamma_big / x_zp);
  CHECK(classify_regimes(sys).bistability_risk.satisfied);
}
