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

#include "cavitymech/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "cavitymech/model.hpp"
#include "cavitymech/ode.hpp"

namespace cavitymech::fock {

namespace {

using Trip = Eigen::Triplet<Complex>;

// Stride of one mode under "last mode fastest" ordering.
int mode_stride(const FockSpec& spec, int mode) {
  int s = 1;
  for (int k = mode + 1; k < spec.modes(); ++k) s *= spec.dims[k];
  return s;
}

int digit_of(int index, int stride, int dim) { return (index / stride) % dim; }

SpMat speye(int n) {
  SpMat I(n, n);
  I.setIdentity();
  return I;
}

SpMat spkron(const SpMat& A, const SpMat& B) {
  SpMat C(A.rows() * B.rows(), A.cols() * B.cols());
  std::vector<Trip> t;
  t.reserve(static_cast<std::size_t>(A.nonZeros()) * B.nonZeros());
  for (int ka = 0; ka < A.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
      for (int kb = 0; kb < B.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
          t.emplace_back(ia.row() * B.rows() + ib.row(),
                         ia.col() * B.cols() + ib.col(),
                         ia.value() * ib.value());
  C.setFromTriplets(t.begin(), t.end());
  return C;
}

// Column-major vectorization: vec index of entry (i, j) is j * D + i.
SpMat liouvillian(const SpMat& H, const std::vector<SpMat>& collapse) {
  const int D = static_cast<int>(H.rows());
  const SpMat I = speye(D);
  const SpMat HT = SpMat(H.transpose());
  SpMat L = Complex(0, -1) * (spkron(I, H) - spkron(HT, I));
  for (const auto& Lk : collapse) {
    const SpMat Lkc = Lk.conjugate();
    const SpMat M = SpMat(Lk.adjoint() * Lk);
    const SpMat MT = SpMat(M.transpose());
    L = L + spkron(Lkc, Lk) - 0.5 * (spkron(I, M) + spkron(MT, I));
  }
  return L;
}

DensityOperator vector_to_state(const Eigen::VectorXcd& psi,
                                const FockSpec& spec) {
  DensityOperator s;
  s.spec = spec;
  const Eigen::VectorXcd n = psi / psi.norm();
  s.rho = n * n.adjoint();
  return s;
}

double top_level_population(const Eigen::MatrixXcd& rho, const FockSpec& spec,
                            int mode) {
  const int stride = mode_stride(spec, mode);
  const int dim = spec.dims[mode];
  double pop = 0;
  for (int i = 0; i < rho.rows(); ++i)
    if (digit_of(i, stride, dim) == dim - 1) pop += rho(i, i).real();
  return pop;
}

}  // namespace

int FockSpec::total_dim() const {
  int d = 1;
  for (int k : dims) d *= k;
  return d;
}

int FockSpec::mode_index(const std::string& label) const {
  for (int i = 0; i < modes(); ++i)
    if (mode_labels[i] == label) return i;
  throw ConfigError("fock spec: no mode labeled '" + label + "'");
}

void FockSpec::validate() const {
  if (dims.empty()) throw ConfigError("fock spec: no modes");
  if (dims.size() != mode_labels.size())
    throw ConfigError("fock spec: dims/labels size mismatch");
  long long prod = 1;
  for (int d : dims) {
    if (d < 2) throw ConfigError("fock spec: every dimension must be >= 2");
    prod *= d;
    if (prod > 4096)
      throw ConfigError("fock spec: product dimension exceeds 4096");
  }
  std::set<std::string> seen(mode_labels.begin(), mode_labels.end());
  if (seen.size() != mode_labels.size())
    throw ConfigError("fock spec: duplicate mode labels");
}

SpMat destroy_op(const FockSpec& spec, int mode) {
  spec.validate();
  if (mode < 0 || mode >= spec.modes())
    throw ConfigError("destroy_op: mode index out of range");
  const int D = spec.total_dim();
  const int stride = mode_stride(spec, mode);
  const int dim = spec.dims[mode];
  std::vector<Trip> t;
  t.reserve(D);
  for (int i = 0; i < D; ++i) {
    const int n = digit_of(i, stride, dim);
    if (n >= 1) t.emplace_back(i - stride, i, std::sqrt(double(n)));
  }
  SpMat a(D, D);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SpMat number_op(const FockSpec& spec, int mode) {
  spec.validate();
  if (mode < 0 || mode >= spec.modes())
    throw ConfigError("number_op: mode index out of range");
  const int D = spec.total_dim();
  const int stride = mode_stride(spec, mode);
  const int dim = spec.dims[mode];
  std::vector<Trip> t;
  t.reserve(D);
  for (int i = 0; i < D; ++i) {
    const int n = digit_of(i, stride, dim);
    if (n >= 1) t.emplace_back(i, i, double(n));
  }
  SpMat num(D, D);
  num.setFromTriplets(t.begin(), t.end());
  return num;
}

void DensityOperator::validate() const {
  spec.validate();
  const int D = spec.total_dim();
  if (rho.rows() != D || rho.cols() != D)
    throw ConfigError("density operator: size does not match fock spec");
  if (!rho.allFinite())
    throw NumericalError("density operator: non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw NumericalError("density operator: not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw NumericalError("density operator: trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("density operator: eigenvalue check failed");
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw NumericalError("density operator: negative eigenvalue");
}

DensityOperator vacuum_state(const FockSpec& spec) {
  spec.validate();
  const int D = spec.total_dim();
  DensityOperator s;
  s.spec = spec;
  s.rho = Eigen::MatrixXcd::Zero(D, D);
  s.rho(0, 0) = 1.0;
  return s;
}

DensityOperator fock_state(const FockSpec& spec, int mode, int n) {
  spec.validate();
  if (mode < 0 || mode >= spec.modes())
    throw ConfigError("fock_state: mode index out of range");
  if (n < 0 || n >= spec.dims[mode])
    throw ConfigError("fock_state: level outside the truncation");
  const int D = spec.total_dim();
  const int idx = n * mode_stride(spec, mode);
  DensityOperator s;
  s.spec = spec;
  s.rho = Eigen::MatrixXcd::Zero(D, D);
  s.rho(idx, idx) = 1.0;
  return s;
}

DensityOperator coherent_state(const FockSpec& spec, int mode, Complex alpha) {
  spec.validate();
  if (mode < 0 || mode >= spec.modes())
    throw ConfigError("coherent_state: mode index out of range");
  const int D = spec.total_dim();
  const int stride = mode_stride(spec, mode);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(D);
  Complex c = 1.0;
  for (int n = 0; n < spec.dims[mode]; ++n) {
    psi(n * stride) = c;
    c *= alpha / std::sqrt(double(n + 1));
  }
  return vector_to_state(psi, spec);
}

DensityOperator thermal_state(const FockSpec& spec, int mode, double n_bar) {
  spec.validate();
  if (mode < 0 || mode >= spec.modes())
    throw ConfigError("thermal_state: mode index out of range");
  if (!(std::isfinite(n_bar) && n_bar >= 0))
    throw ConfigError("thermal_state: n_bar must be >= 0");
  const int D = spec.total_dim();
  const int stride = mode_stride(spec, mode);
  DensityOperator s;
  s.spec = spec;
  s.rho = Eigen::MatrixXcd::Zero(D, D);
  const double ratio = n_bar / (n_bar + 1.0);
  double w = 1.0, norm = 0.0;
  for (int n = 0; n < spec.dims[mode]; ++n) {
    s.rho(n * stride, n * stride) = w;
    norm += w;
    w *= ratio;
  }
  s.rho /= norm;
  return s;
}

SpMat build_hamiltonian(const HybridSystem& system, const FockSpec& spec,
                        HamiltonianForm form) {
  system.validate();
  spec.validate();
  const auto labels = system.mode_labels();
  if (static_cast<int>(labels.size()) != spec.modes())
    throw ConfigError("build_hamiltonian: mode count mismatch with fock spec");

  const int mech_mode = spec.mode_index("mech");
  const SpMat d = destroy_op(spec, mech_mode);
  const SpMat dd = SpMat(d.adjoint());
  const int D = spec.total_dim();
  SpMat H(D, D);

  if (form == HamiltonianForm::full_parametric)
    H = system.mech.omega_m * SpMat(dd * d);

  for (const auto& dc : system.cavities) {
    const int cav_mode = spec.mode_index(band_label(dc.cavity.band));
    const SpMat a = destroy_op(spec, cav_mode);
    const SpMat ad = SpMat(a.adjoint());
    const double Gamma = manyphoton_coupling(system.mech, dc.cavity, dc.drive);
    const double s = dc.sign();
    if (form == HamiltonianForm::full_parametric) {
      H = H + dc.drive.detuning * SpMat(ad * a) +
          (s * Gamma) * SpMat(SpMat(a + ad) * SpMat(d + dd));
    } else {
      H = H + (s * Gamma) * SpMat(SpMat(ad * d) + SpMat(dd * a));
    }
  }
  return H;
}

std::vector<SpMat> collapse_operators(const HybridSystem& system,
                                      const FockSpec& spec) {
  system.validate();
  spec.validate();
  std::vector<SpMat> ops;
  for (const auto& dc : system.cavities) {
    const int cav_mode = spec.mode_index(band_label(dc.cavity.band));
    const SpMat a = destroy_op(spec, cav_mode);
    const double gamma = dc.cavity.gamma;
    const double n_th = dc.cavity.n_thermal;
    if (gamma * (n_th + 1.0) > 0) ops.push_back(std::sqrt(gamma * (n_th + 1.0)) * a);
    if (gamma * n_th > 0) ops.push_back(std::sqrt(gamma * n_th) * SpMat(a.adjoint()));
  }
  const int mech_mode = spec.mode_index("mech");
  const SpMat d = destroy_op(spec, mech_mode);
  const double n_bath = thermal_occupation(system.mech, OccupationModel::linear);
  const double gm = system.mech.gamma_m;
  if (gm * (n_bath + 1.0) > 0) ops.push_back(std::sqrt(gm * (n_bath + 1.0)) * d);
  if (gm * n_bath > 0) ops.push_back(std::sqrt(gm * n_bath) * SpMat(d.adjoint()));
  return ops;
}

std::vector<DensityOperator> lindblad_evolve(const SpMat& H,
                                             const std::vector<SpMat>& collapse,
                                             const DensityOperator& rho0,
                                             const std::vector<double>& t_grid,
                                             const LindbladOptions& opt) {
  rho0.validate();
  const int D = rho0.spec.total_dim();
  if (H.rows() != D || H.cols() != D)
    throw ConfigError("lindblad_evolve: Hamiltonian size mismatch");

  // Non-Hermitian drift K = -iH - 1/2 sum L^dag L, so that
  // d rho/dt = K rho + rho K^dag + sum L rho L^dag.
  SpMat K = Complex(0, -1) * H;
  std::vector<SpMat> Ldag;
  Ldag.reserve(collapse.size());
  for (const auto& L : collapse) {
    if (L.rows() != D || L.cols() != D)
      throw ConfigError("lindblad_evolve: collapse operator size mismatch");
    K = K - 0.5 * SpMat(L.adjoint() * L);
    Ldag.push_back(SpMat(L.adjoint()));
  }
  const SpMat Kdag = SpMat(K.adjoint());

  auto rhs = [&](double, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& drho) {
    drho = K * rho;
    drho += rho * Kdag;
    for (std::size_t k = 0; k < collapse.size(); ++k)
      drho += collapse[k] * (rho * Ldag[k]).eval();
  };
  auto on_accept = [&](double t, Eigen::MatrixXcd& rho) {
    rho = 0.5 * (rho + rho.adjoint().eval());
    for (int m = 0; m < rho0.spec.modes(); ++m) {
      const double pop = top_level_population(rho, rho0.spec, m);
      if (pop > opt.overflow_threshold) {
        std::ostringstream os;
        os << "lindblad_evolve: truncation overflow in mode '"
           << rho0.spec.mode_labels[m] << "' (top-level population " << pop
           << " at t = " << t << " s)";
        throw TruncationOverflowError(os.str());
      }
    }
  };

  {
    Eigen::MatrixXcd initial = rho0.rho;
    on_accept(t_grid.empty() ? 0.0 : t_grid.front(), initial);
  }

  OdeOptions ode;
  ode.rel_tol = opt.rel_tol;
  ode.abs_tol = opt.abs_tol;
  const auto raw = integrate(rhs, Eigen::MatrixXcd(rho0.rho), t_grid, ode, on_accept);

  std::vector<DensityOperator> out;
  out.reserve(raw.size());
  for (const auto& r : raw) {
    DensityOperator s;
    s.spec = rho0.spec;
    s.rho = 0.5 * (r + r.adjoint().eval());
    s.validate();
    out.push_back(std::move(s));
  }
  return out;
}

DensityOperator lindblad_steady_state(const SpMat& H,
                                      const std::vector<SpMat>& collapse,
                                      const FockSpec& spec) {
  spec.validate();
  const int D = spec.total_dim();
  if (H.rows() != D || H.cols() != D)
    throw ConfigError("lindblad_steady_state: Hamiltonian size mismatch");

  const SpMat L = liouvillian(H, collapse);
  double scale = 0;
  for (int k = 0; k < L.outerSize(); ++k)
    for (SpMat::InnerIterator it(L, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  if (!(scale > 0))
    throw DegenerateSteadyStateError(
        "lindblad_steady_state: zero Liouvillian, every state is steady");

  const long long vec_dim = static_cast<long long>(D) * D;

  // Replace one row with the trace-normalization row trace(rho) = 1.
  auto assemble = [&](long long trace_row) {
    std::vector<Trip> t;
    t.reserve(L.nonZeros() + D);
    for (int k = 0; k < L.outerSize(); ++k)
      for (SpMat::InnerIterator it(L, k); it; ++it)
        if (it.row() != trace_row)
          t.emplace_back(it.row(), it.col(), it.value() / scale);
    for (int j = 0; j < D; ++j)
      t.emplace_back(static_cast<int>(trace_row), j * D + j, 1.0);
    SpMat A(vec_dim, vec_dim);
    A.setFromTriplets(t.begin(), t.end());
    return A;
  };

  auto solve_one = [&](long long trace_row, bool first) {
    const SpMat A = assemble(trace_row);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(vec_dim);
    b(trace_row) = 1.0;
    Eigen::VectorXcd x;
    if (vec_dim <= 40000) {
      Eigen::SparseLU<SpMat> lu;
      lu.compute(A);
      if (lu.info() != Eigen::Success) {
        if (first)
          throw DegenerateSteadyStateError(
              "lindblad_steady_state: Liouvillian is singular with the trace "
              "constraint, steady state is not unique");
        throw DegenerateSteadyStateError(
            "lindblad_steady_state: verification solve is singular, steady "
            "state is not unique");
      }
      x = lu.solve(b);
    } else {
      Eigen::GMRES<SpMat, Eigen::IncompleteLUT<Complex>> gm;
      gm.preconditioner().setDroptol(1e-5);
      gm.preconditioner().setFillfactor(15);
      gm.setMaxIterations(600);
      gm.set_restart(100);
      gm.setTolerance(1e-11);
      gm.compute(A);
      if (gm.info() != Eigen::Success)
        throw NumericalError(
            "lindblad_steady_state: preconditioner construction failed");
      x = gm.solve(b);
      // Restarted GMRES can stall just above the residual gate; refinement
      // passes with the same preconditioner break the stagnation.
      for (int pass = 0; pass < 3 && (A * x - b).norm() > 1e-10; ++pass)
        x += gm.solve((b - A * x).eval());
    }
    const double resid = (A * x - b).norm();
    if (!(resid <= 1e-9)) {
      std::ostringstream os;
      os << "lindblad_steady_state: scaled residual " << resid
         << " exceeds 1e-9" << (first ? "" : " in the verification solve");
      if (first) throw NumericalError(os.str());
      throw DegenerateSteadyStateError(os.str());
    }
    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), D, D);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    return rho;
  };

  const Eigen::MatrixXcd rho1 = solve_one(0, true);
  const long long k2 = D / 2;
  const Eigen::MatrixXcd rho2 = solve_one(k2 * D + k2, false);
  if ((rho1 - rho2).norm() > 1e-8)
    throw DegenerateSteadyStateError(
        "lindblad_steady_state: two trace-constrained solves disagree, the "
        "steady state is not unique");

  DensityOperator s;
  s.spec = spec;
  s.rho = rho1;
  s.validate();
  return s;
}

double expectation_number(const DensityOperator& state, int mode) {
  const SpMat num = number_op(state.spec, mode);
  return (num * state.rho).eval().trace().real();
}

double expectation_quadrature(const DensityOperator& state, int mode,
                              Quadrature which) {
  const SpMat a = destroy_op(state.spec, mode);
  const Complex t = (a * state.rho).eval().trace();
  const double root2 = std::sqrt(2.0);
  return which == Quadrature::q ? root2 * t.real() : root2 * t.imag();
}

DensityOperator partial_trace(const DensityOperator& state, int keep_mode) {
  const FockSpec& spec = state.spec;
  spec.validate();
  if (keep_mode < 0 || keep_mode >= spec.modes())
    throw ConfigError("partial_trace: mode index out of range");
  const int D = spec.total_dim();
  const int stride = mode_stride(spec, keep_mode);
  const int dim = spec.dims[keep_mode];

  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < D; ++i) {
    if (digit_of(i, stride, dim) != 0) continue;
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n < dim; ++n)
        red(m, n) += state.rho(i + m * stride, i + n * stride);
  }

  DensityOperator out;
  out.spec = FockSpec{{dim}, {spec.mode_labels[keep_mode]}};
  out.rho = std::move(red);
  return out;
}

double fidelity(const DensityOperator& rho1, const DensityOperator& rho2) {
  if (rho1.spec.total_dim() != rho2.spec.total_dim())
    throw ConfigError("fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(rho1.rho);
  if (es1.info() != Eigen::Success)
    throw NumericalError("fidelity: eigendecomposition failed");
  const Eigen::VectorXd ev = es1.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXcd sqrt1 =
      es1.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
      es1.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2;
  es2.compute(sqrt1 * rho2.rho * sqrt1, Eigen::EigenvaluesOnly);
  if (es2.info() != Eigen::Success)
    throw NumericalError("fidelity: eigendecomposition failed");
  const double root_sum = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_sum * root_sum;
}

}  // namespace cavitymech::fock
