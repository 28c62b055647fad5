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

#include "cavitymech/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavitymech/constants.hpp"
#include "cavitymech/fock.hpp"
#include "cavitymech/gaussian.hpp"
#include "cavitymech/model.hpp"
#include "cavitymech/roots.hpp"

namespace cavitymech {

namespace {

// Lossless three-mode chain, single excitation on the input end:
// end-mode amplitude c(t) = (G1 G2 / Omega^2)(cos(Omega t) - 1),
// Omega = sqrt(G1^2 + G2^2).
double end_population(double G1, double G2, double t) {
  const double Omega2 = G1 * G1 + G2 * G2;
  const double c = G1 * G2 / Omega2 * (std::cos(std::sqrt(Omega2) * t) - 1.0);
  return c * c;
}

struct TransferSetup {
  HybridSystem system;      // drives rebuilt from the protocol rates
  int in_cavity, out_cavity;  // indices into system.cavities
  // Predicted sign of the end-to-end amplitude. The chain maps the input
  // amplitude through s_in s_out (cos(Omega t) - 1) <= 0, so the output
  // carries -s_in s_out times the input.
  double phase_sign = 1.0;
  NoiseBudget budget;
};

TransferSetup prepare(const HybridSystem& system,
                      const TransferProtocol& protocol) {
  system.validate();
  protocol.validate();
  if (system.cavities.size() != 2)
    throw ConfigError("simulate_transfer: system needs both cavities");

  TransferSetup setup;
  setup.system = system;
  const int em = system.cavity_index(Band::microwave);
  const int om = system.cavity_index(Band::optical);
  const double x_zp = zero_point_motion(system.mech);

  auto set_rate = [&](int idx, double Gamma) {
    auto& dc = setup.system.cavities[idx];
    const double gx = std::abs(dc.cavity.g) * x_zp;
    if (Gamma > 0 && gx == 0)
      throw ConfigError(std::string("simulate_transfer: ") +
                        band_label(dc.cavity.band) +
                        " cavity needs g != 0 to realize the requested rate");
    const double amp = (Gamma > 0) ? Gamma / gx : 0.0;
    dc.drive.input_power.reset();
    dc.drive.n_photons = amp * amp;
  };
  set_rate(em, protocol.Gamma_EM);
  set_rate(om, protocol.Gamma_OM);

  const bool e_to_o = protocol.direction == TransferDirection::EtoO;
  setup.in_cavity = e_to_o ? em : om;
  setup.out_cavity = e_to_o ? om : em;
  setup.phase_sign = -(system.cavities[setup.in_cavity].sign() *
                       system.cavities[setup.out_cavity].sign());

  setup.budget.mech_decoherence =
      system.mech.gamma_m * thermal_occupation(system.mech);
  setup.budget.cavity_loss_E = system.cavities[em].cavity.gamma;
  setup.budget.cavity_loss_O = system.cavities[om].cavity.gamma;
  setup.budget.Gamma_EM = protocol.Gamma_EM;
  setup.budget.Gamma_OM = protocol.Gamma_OM;
  return setup;
}

double ideal_image(const InputState& input) {
  switch (input.kind) {
    case InputState::Kind::coherent: return std::norm(input.alpha);
    case InputState::Kind::fock: return double(input.n);
    default: return 0.0;
  }
}

int cavity_to_mode(int cavity_idx) { return cavity_idx == 0 ? 0 : 2; }

TransferResult gaussian_transfer(const TransferSetup& setup,
                                 const TransferProtocol& protocol) {
  if (protocol.input.kind == InputState::Kind::fock && protocol.input.n > 0)
    throw ConfigError(
        "simulate_transfer: gaussian engine handles vacuum and coherent "
        "inputs only; use the oracle engine for fock states");

  const LinearModel model = linearize(setup.system, /*rwa=*/true);
  GaussianState state0 = vacuum_state(model.mode_labels);
  const std::complex<double> alpha =
      protocol.input.kind == InputState::Kind::coherent ? protocol.input.alpha
                                                        : 0.0;
  const int in_mode = cavity_to_mode(setup.in_cavity);
  const int out_mode = cavity_to_mode(setup.out_cavity);
  const double root2 = std::sqrt(2.0);
  state0.mean(2 * in_mode) = root2 * alpha.real();
  state0.mean(2 * in_mode + 1) = root2 * alpha.imag();

  const auto states = evolve(model, state0, {0.0, protocol.duration});
  const GaussianState& fin = states.back();

  const Eigen::Vector2d out_mean = fin.mean.segment<2>(2 * out_mode);
  const Eigen::Matrix2d out_cov = fin.cov.block<2, 2>(2 * out_mode, 2 * out_mode);
  const Eigen::Vector2d target_mean(root2 * alpha.real(), root2 * alpha.imag());
  const Eigen::Matrix2d target_cov = 0.5 * Eigen::Matrix2d::Identity();

  TransferResult result;
  // Undo the deterministic amplitude sign of the chain (a pi rotation when
  // negative); it leaves the covariance unchanged, so infidelity measures
  // decoherence only.
  result.fidelity = gaussian_fidelity(setup.phase_sign * out_mean, out_cov,
                                      target_mean, target_cov);
  result.raw_fidelity =
      gaussian_fidelity(out_mean, out_cov, target_mean, target_cov);
  const double n_alpha = std::norm(alpha);
  if (protocol.input.kind == InputState::Kind::coherent && n_alpha > 0)
    result.efficiency = 0.5 * out_mean.squaredNorm() / n_alpha;
  result.added_noise =
      mode_occupation(fin, out_mode) - ideal_image(protocol.input);
  result.budget = setup.budget;
  result.engine = "gaussian";
  result.duration_s = protocol.duration;
  return result;
}

TransferResult oracle_transfer(const TransferSetup& setup,
                               const TransferProtocol& protocol,
                               const TransferOptions& opt) {
  if (opt.oracle_dims.size() != 3)
    throw ConfigError("simulate_transfer: oracle_dims must list three modes");
  for (const auto& dc : setup.system.cavities) {
    if (std::abs(dc.drive.detuning - setup.system.mech.omega_m) >
        1e-6 * setup.system.mech.omega_m)
      throw ConfigError(
          "simulate_transfer: oracle engine requires every detuning matched "
          "to omega_m");
  }

  // oracle_dims order is [input cavity, mech, output cavity]; the fock spec
  // follows the system mode order [cavity 0, mech, cavity 1].
  const auto labels = setup.system.mode_labels();
  fock::FockSpec spec;
  spec.mode_labels = labels;
  spec.dims.resize(3);
  const int in_mode = cavity_to_mode(setup.in_cavity);
  const int out_mode = cavity_to_mode(setup.out_cavity);
  spec.dims[in_mode] = opt.oracle_dims[0];
  spec.dims[1] = opt.oracle_dims[1];
  spec.dims[out_mode] = opt.oracle_dims[2];
  spec.validate();

  const fock::SpMat H = fock::build_hamiltonian(
      setup.system, spec, fock::HamiltonianForm::rwa_beamsplitter);
  const auto collapse = fock::collapse_operators(setup.system, spec);

  fock::DensityOperator rho0 = fock::vacuum_state(spec);
  switch (protocol.input.kind) {
    case InputState::Kind::coherent:
      rho0 = fock::coherent_state(spec, in_mode, protocol.input.alpha);
      break;
    case InputState::Kind::fock:
      rho0 = fock::fock_state(spec, in_mode, protocol.input.n);
      break;
    default:
      break;
  }

  const auto states =
      fock::lindblad_evolve(H, collapse, rho0, {0.0, protocol.duration});
  const fock::DensityOperator& fin = states.back();
  fock::DensityOperator reduced = fock::partial_trace(fin, out_mode);

  const int d_out = reduced.spec.total_dim();
  fock::DensityOperator target = fock::vacuum_state(reduced.spec);
  switch (protocol.input.kind) {
    case InputState::Kind::coherent:
      target = fock::coherent_state(reduced.spec, 0, protocol.input.alpha);
      break;
    case InputState::Kind::fock:
      if (protocol.input.n >= d_out)
        throw ConfigError(
            "simulate_transfer: output truncation below the fock input level");
      target = fock::fock_state(reduced.spec, 0, protocol.input.n);
      break;
    default:
      break;
  }

  // Undo a deterministic -1 amplitude: conjugate by the parity phase
  // diag((-1)^n), which maps <a> to -<a>.
  fock::DensityOperator corrected = reduced;
  if (setup.phase_sign < 0) {
    Eigen::VectorXd parity(d_out);
    for (int n = 0; n < d_out; ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;
    corrected.rho = parity.asDiagonal() * reduced.rho * parity.asDiagonal();
  }

  TransferResult result;
  result.fidelity = fock::fidelity(corrected, target);
  result.raw_fidelity = fock::fidelity(reduced, target);
  const double n_alpha = std::norm(protocol.input.alpha);
  if (protocol.input.kind == InputState::Kind::coherent && n_alpha > 0) {
    const double q = fock::expectation_quadrature(fin, out_mode, fock::Quadrature::q);
    const double p = fock::expectation_quadrature(fin, out_mode, fock::Quadrature::p);
    result.efficiency = 0.5 * (q * q + p * p) / n_alpha;
  }
  result.added_noise =
      fock::expectation_number(fin, out_mode) - ideal_image(protocol.input);
  result.budget = setup.budget;
  result.engine = "oracle";
  result.duration_s = protocol.duration;
  return result;
}

}  // namespace

void InputState::validate() const {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw ConfigError("input state: alpha must be finite");
  if (n < 0) throw ConfigError("input state: fock level must be >= 0");
}

void TransferProtocol::validate() const {
  if (!(std::isfinite(Gamma_EM) && Gamma_EM >= 0))
    throw ConfigError("transfer protocol: Gamma_EM must be >= 0");
  if (!(std::isfinite(Gamma_OM) && Gamma_OM >= 0))
    throw ConfigError("transfer protocol: Gamma_OM must be >= 0");
  if (!(std::isfinite(duration) && duration > 0))
    throw ConfigError("transfer protocol: duration must be positive");
  input.validate();
}

double ideal_swap_time(double Gamma_EM, double Gamma_OM) {
  if (!(Gamma_EM > 0) || !(Gamma_OM > 0))
    throw ConfigError("ideal_swap_time: both rates must be positive");
  const double gmax = std::max(Gamma_EM, Gamma_OM);
  if (std::abs(Gamma_EM - Gamma_OM) <= 1e-12 * gmax)
    return pi / (std::sqrt(2.0) * Gamma_EM);

  // First maximum of the end-mode population: coarse scan, then refine.
  const double t_max = 4.0 * pi / std::min(Gamma_EM, Gamma_OM);
  const int n_scan = 2048;
  const double dt = t_max / n_scan;
  double prev = 0, curr = end_population(Gamma_EM, Gamma_OM, dt);
  for (int i = 2; i <= n_scan; ++i) {
    const double next = end_population(Gamma_EM, Gamma_OM, i * dt);
    if (curr >= prev && curr >= next) {
      auto neg = [&](double t) { return -end_population(Gamma_EM, Gamma_OM, t); };
      return golden_section_min(neg, (i - 2) * dt, i * dt).first;
    }
    prev = curr;
    curr = next;
  }
  throw NumericalError("ideal_swap_time: no population maximum in scan window");
}

TransferResult simulate_transfer(const HybridSystem& system,
                                 const TransferProtocol& protocol,
                                 TransferEngine engine,
                                 const TransferOptions& opt) {
  const TransferSetup setup = prepare(system, protocol);
  if (engine == TransferEngine::gaussian)
    return gaussian_transfer(setup, protocol);
  return oracle_transfer(setup, protocol, opt);
}

FeasibilityReport transfer_feasibility(const HybridSystem& system) {
  system.validate();
  FeasibilityReport report;
  const double decoherence =
      system.mech.gamma_m * thermal_occupation(system.mech);
  const double half_omega = 0.5 * system.mech.omega_m;
  for (const auto& dc : system.cavities) {
    const double Gamma = manyphoton_coupling(system.mech, dc.cavity, dc.drive);
    const std::string tag = band_label(dc.cavity.band);
    report.entries.push_back(
        {"Gamma_" + tag + "_above_cavity_loss", Gamma, dc.cavity.gamma,
         Gamma > dc.cavity.gamma});
    report.entries.push_back(
        {"Gamma_" + tag + "_above_mech_decoherence", Gamma, decoherence,
         Gamma > decoherence});
    report.entries.push_back({"Gamma_" + tag + "_below_bistability", Gamma,
                              half_omega, Gamma < half_omega});
  }
  report.all_pass = true;
  for (const auto& e : report.entries) report.all_pass = report.all_pass && e.pass;
  return report;
}

}  // namespace cavitymech
