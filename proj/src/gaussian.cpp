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

#include "cavitymech/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "cavitymech/constants.hpp"
#include "cavitymech/lyapunov.hpp"
#include "cavitymech/model.hpp"
#include "cavitymech/ode.hpp"

namespace cavitymech {

namespace {

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return omega;
}

}  // namespace

void GaussianState::validate() const {
  const int n = modes();
  if (n == 0) throw ConfigError("gaussian state: no modes");
  if (mean.size() != 2 * n || cov.rows() != 2 * n || cov.cols() != 2 * n)
    throw ConfigError("gaussian state: size mismatch with mode labels");
  if (!mean.allFinite() || !cov.allFinite())
    throw NumericalError("gaussian state: non-finite entries");

  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale)
    throw NumericalError("gaussian state: covariance not symmetric");

  Eigen::MatrixXcd h = cov.cast<std::complex<double>>();
  h += std::complex<double>(0, 0.5) * symplectic_form(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalError("gaussian state: eigenvalue check failed");
  if (es.eigenvalues().minCoeff() < -1e-9 * scale)
    throw NumericalError("gaussian state: uncertainty bound violated");
}

GaussianState vacuum_state(const std::vector<std::string>& labels) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw ConfigError("vacuum_state: no modes");
  GaussianState s;
  s.mean = Eigen::VectorXd::Zero(2 * n);
  s.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  s.mode_labels = labels;
  return s;
}

LinearModel linearize(const HybridSystem& system, bool rwa) {
  system.validate();
  const auto labels = system.mode_labels();
  const int n_modes = static_cast<int>(labels.size());
  const int dim = 2 * n_modes;
  const int mech_q = 2;  // mech block rows: ordering [cavity 0, mech, cavity 1]

  Eigen::MatrixXd drift = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd diffusion = Eigen::MatrixXd::Zero(dim, dim);

  const MechanicalMode& mech = system.mech;
  const double n_bath = thermal_occupation(mech, OccupationModel::linear);
  diffusion.block<2, 2>(mech_q, mech_q) =
      mech.gamma_m * (n_bath + 0.5) * Eigen::Matrix2d::Identity();

  if (rwa) {
    drift.block<2, 2>(mech_q, mech_q) =
        -0.5 * mech.gamma_m * Eigen::Matrix2d::Identity();
  } else {
    drift.block<2, 2>(mech_q, mech_q) << -0.5 * mech.gamma_m, mech.omega_m,
        -mech.omega_m, -0.5 * mech.gamma_m;
  }

  Eigen::Matrix2d J;
  J << 0, 1, -1, 0;

  for (std::size_t i = 0; i < system.cavities.size(); ++i) {
    const auto& dc = system.cavities[i];
    const int cav_q = (i == 0) ? 0 : 4;
    const double gamma = dc.cavity.gamma;
    const double Delta = dc.drive.detuning;
    const double Gamma = manyphoton_coupling(mech, dc.cavity, dc.drive);
    const double s = dc.sign();

    diffusion.block<2, 2>(cav_q, cav_q) =
        gamma * (dc.cavity.n_thermal + 0.5) * Eigen::Matrix2d::Identity();

    if (rwa) {
      if (std::abs(Delta - mech.omega_m) > 0.1 * mech.omega_m) {
        std::ostringstream os;
        os << "linearize: rwa requires detuning within 10% of omega_m ("
           << band_label(dc.cavity.band) << " cavity detuning " << Delta
           << " rad/s, omega_m " << mech.omega_m << " rad/s)";
        throw ConfigError(os.str());
      }
      const double delta = Delta - mech.omega_m;
      drift.block<2, 2>(cav_q, cav_q) << -0.5 * gamma, delta, -delta,
          -0.5 * gamma;
      drift.block<2, 2>(cav_q, mech_q) = s * Gamma * J;
      drift.block<2, 2>(mech_q, cav_q) = s * Gamma * J;
    } else {
      drift.block<2, 2>(cav_q, cav_q) << -0.5 * gamma, Delta, -Delta,
          -0.5 * gamma;
      drift(cav_q + 1, mech_q) += -2.0 * s * Gamma;
      drift(mech_q + 1, cav_q) += -2.0 * s * Gamma;
    }
  }

  return {drift, diffusion, labels};
}

GaussianState steady_state(const LinearModel& model) {
  const int dim = static_cast<int>(model.drift.rows());
  Eigen::EigenSolver<Eigen::MatrixXd> es(model.drift);
  if (es.info() != Eigen::Success)
    throw NumericalError("steady_state: drift eigenvalue computation failed");
  for (int i = 0; i < dim; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (ev.real() >= 0) {
      std::ostringstream os;
      os << "steady_state: drift is not Hurwitz (eigenvalue " << ev.real()
         << (ev.imag() >= 0 ? "+" : "-") << std::abs(ev.imag()) << "i rad/s)";
      throw InstabilityError(os.str());
    }
  }

  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const MatL A = model.drift.cast<long double>();
  const MatL Q = model.diffusion.cast<long double>();
  const Eigen::MatrixXd V = solve_lyapunov<long double>(A, Q).cast<double>();

  const double resid =
      (model.drift * V + V * model.drift.transpose() + model.diffusion).norm();
  const double dnorm = model.diffusion.norm();
  if (resid > 1e-10 * std::max(dnorm, 1e-300))
    throw NumericalError("steady_state: Lyapunov residual above tolerance");

  GaussianState s;
  s.mean = Eigen::VectorXd::Zero(dim);
  s.cov = 0.5 * (V + V.transpose());
  s.mode_labels = model.mode_labels;
  s.validate();
  return s;
}

double phonon_number(const GaussianState& state, int mode_index) {
  if (mode_index < 0 || mode_index >= state.modes())
    throw ConfigError("phonon_number: mode index out of range");
  const int q = 2 * mode_index;
  return 0.5 * (state.cov(q, q) + state.cov(q + 1, q + 1) - 1.0);
}

double mode_occupation(const GaussianState& state, int mode_index) {
  const int q = 2 * mode_index;
  const double u2 = state.mean(q) * state.mean(q) +
                    state.mean(q + 1) * state.mean(q + 1);
  return phonon_number(state, mode_index) + 0.5 * u2;
}

std::vector<GaussianState> evolve(const LinearModel& model,
                                  const GaussianState& state0,
                                  const std::vector<double>& t_grid,
                                  const EvolveOptions& opt) {
  state0.validate();
  const int dim = static_cast<int>(model.drift.rows());
  if (state0.mean.size() != dim)
    throw ConfigError("evolve: state does not match model dimension");

  // Pack [mean; vec(cov)] into one vector for the integrator.
  Eigen::VectorXd y0(dim + dim * dim);
  y0.head(dim) = state0.mean;
  Eigen::Map<Eigen::MatrixXd>(y0.data() + dim, dim, dim) = state0.cov;

  const Eigen::MatrixXd& A = model.drift;
  const Eigen::MatrixXd& D = model.diffusion;

  auto rhs = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(y.size());
    dy.head(dim) = A * y.head(dim);
    Eigen::Map<const Eigen::MatrixXd> V(y.data() + dim, dim, dim);
    Eigen::Map<Eigen::MatrixXd> dV(dy.data() + dim, dim, dim);
    dV = A * V + V * A.transpose() + D;
  };
  auto resymmetrize = [&](double, Eigen::VectorXd& y) {
    Eigen::Map<Eigen::MatrixXd> V(y.data() + dim, dim, dim);
    V = 0.5 * (V + V.transpose()).eval();
  };

  OdeOptions ode;
  ode.rel_tol = opt.rel_tol;
  ode.abs_tol = opt.abs_tol;
  const auto packed = integrate(rhs, y0, t_grid, ode, resymmetrize);

  std::vector<GaussianState> out;
  out.reserve(packed.size());
  for (const auto& y : packed) {
    GaussianState s;
    s.mean = y.head(dim);
    Eigen::Map<const Eigen::MatrixXd> V(y.data() + dim, dim, dim);
    s.cov = 0.5 * (V + V.transpose());
    s.mode_labels = model.mode_labels;
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const int dim = static_cast<int>(cov.rows());
  if (dim % 2 != 0 || cov.cols() != dim)
    throw ConfigError("symplectic_eigenvalues: need a 2N x 2N matrix");
  const int n = dim / 2;
  Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * cov);
  if (es.info() != Eigen::Success)
    throw NumericalError("symplectic_eigenvalues: eigensolver failed");
  std::vector<double> mods(dim);
  for (int i = 0; i < dim; ++i) mods[i] = std::abs(es.eigenvalues()(i));
  std::sort(mods.begin(), mods.end());
  Eigen::VectorXd nu(n);
  for (int i = 0; i < n; ++i) nu(i) = 0.5 * (mods[2 * i] + mods[2 * i + 1]);
  return nu;
}

SpectrumSeries displacement_spectrum(const MechanicalMode& mech, double T,
                                     const std::vector<double>& freq_grid_Hz,
                                     double imprecision_floor) {
  mech.validate();
  if (!(std::isfinite(T) && T >= 0))
    throw ConfigError("displacement_spectrum: temperature must be >= 0");
  if (!(std::isfinite(imprecision_floor) && imprecision_floor >= 0))
    throw ConfigError("displacement_spectrum: floor must be >= 0");
  if (freq_grid_Hz.empty())
    throw ConfigError("displacement_spectrum: empty frequency grid");

  const double S_F = 4.0 * mech.mass * mech.gamma_m * constants.k_B * T;
  const double m2 = mech.mass * mech.mass;
  const double wm2 = mech.omega_m * mech.omega_m;

  SpectrumSeries series;
  series.freq_Hz = freq_grid_Hz;
  series.S_x.reserve(freq_grid_Hz.size());
  for (double f : freq_grid_Hz) {
    if (!(std::isfinite(f) && f >= 0))
      throw ConfigError("displacement_spectrum: frequencies must be >= 0");
    const double w = two_pi * f;
    const double lorentz = (wm2 - w * w) * (wm2 - w * w) +
                           mech.gamma_m * mech.gamma_m * w * w;
    series.S_x.push_back(S_F / (m2 * lorentz) + imprecision_floor);
  }
  return series;
}

double gaussian_fidelity(const Eigen::Vector2d& mean1, const Eigen::Matrix2d& cov1,
                         const Eigen::Vector2d& mean2, const Eigen::Matrix2d& cov2) {
  const Eigen::Matrix2d sum = cov1 + cov2;
  const double det_sum = sum.determinant();
  if (!(det_sum > 0))
    throw NumericalError("gaussian_fidelity: singular covariance sum");

  const double big = 4.0 * det_sum;
  const double d1 = 4.0 * cov1.determinant() - 1.0;
  const double d2 = 4.0 * cov2.determinant() - 1.0;
  const double small = std::max(d1 * d2, 0.0);

  const Eigen::Vector2d du = mean1 - mean2;
  const double expo = -0.5 * du.dot(sum.inverse() * du);
  const double denom = std::sqrt(big + small) - std::sqrt(small);
  return 2.0 * std::exp(expo) / denom;
}

}  // namespace cavitymech
