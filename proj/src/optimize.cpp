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

#include "cavitymech/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "cavitymech/constants.hpp"
#include "cavitymech/gaussian.hpp"
#include "cavitymech/model.hpp"
#include "cavitymech/resonator.hpp"

namespace cavitymech {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

// Deterministic Nelder-Mead with standard coefficients (reflect 1, expand 2,
// contract 0.5, shrink 0.5). f returns +inf outside the feasible region.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            std::vector<Eigen::VectorXd> simplex, int max_iter) {
  const int n = static_cast<int>(simplex[0].size());
  std::vector<double> fv(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = f(simplex[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(simplex.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<Eigen::VectorXd> s2;
    std::vector<double> f2;
    for (std::size_t i : idx) {
      s2.push_back(simplex[i]);
      f2.push_back(fv[i]);
    }
    simplex.swap(s2);
    fv.swap(f2);
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    double diam = 0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
      diam = std::max(diam, (simplex[i] - simplex[0]).norm());
    const double scale = std::max(1.0, simplex[0].norm());
    if (diam <= 1e-12 * scale && std::isfinite(fv[0])) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= double(n);

    const Eigen::VectorXd& worst = simplex.back();
    const Eigen::VectorXd refl = centroid + (centroid - worst);
    const double f_refl = f(refl);

    if (f_refl < fv[0]) {
      const Eigen::VectorXd expa = centroid + 2.0 * (centroid - worst);
      const double f_expa = f(expa);
      if (f_expa < f_refl) {
        simplex.back() = expa;
        fv.back() = f_expa;
      } else {
        simplex.back() = refl;
        fv.back() = f_refl;
      }
    } else if (f_refl < fv[fv.size() - 2]) {
      simplex.back() = refl;
      fv.back() = f_refl;
    } else {
      const bool outside = f_refl < fv.back();
      const Eigen::VectorXd& base = outside ? refl : worst;
      const Eigen::VectorXd contr = centroid + 0.5 * (base - centroid);
      const double f_contr = f(contr);
      if (f_contr < std::min(f_refl, fv.back())) {
        simplex.back() = contr;
        fv.back() = f_contr;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  order();
  return simplex[0];
}

// A single simplex run can degenerate along a narrow valley and stall short
// of the minimum. Restarting from the incumbent with a fresh, progressively
// smaller axis-aligned simplex breaks the degeneracy.
Eigen::VectorXd nelder_mead_restarted(
    const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x,
    Eigen::VectorXd steps, int max_iter) {
  double fx = f(x);
  for (int round = 0; round < 3; ++round) {
    std::vector<Eigen::VectorXd> simplex(
        static_cast<std::size_t>(x.size()) + 1, x);
    for (int k = 0; k < x.size(); ++k) simplex[k + 1](k) += steps(k);
    const Eigen::VectorXd cand = nelder_mead(f, simplex, max_iter);
    const double fc = f(cand);
    if (fc < fx) {
      x = cand;
      fx = fc;
    }
    steps *= 0.1;
  }
  return x;
}

double grid_value(const Bounds& b, bool log_axis, int i, int n) {
  if (n <= 1) return b.lo;
  const double t = double(i) / double(n - 1);
  if (log_axis) return std::exp(std::log(b.lo) + t * (std::log(b.hi) - std::log(b.lo)));
  return b.lo + t * (b.hi - b.lo);
}

bool drift_hurwitz(const Eigen::MatrixXd& drift, double* max_re = nullptr) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(drift);
  double worst = -inf;
  for (int i = 0; i < drift.rows(); ++i)
    worst = std::max(worst, es.eigenvalues()(i).real());
  if (max_re) *max_re = worst;
  return worst < 0;
}

}  // namespace

OperatingPoint optimize_cooling(const HybridSystem& system, Bounds detuning,
                                Bounds n_photons, const OptimizeOptions& opt) {
  system.validate();
  if (system.cavities.size() != 1)
    throw ConfigError("optimize_cooling: single-cavity systems only");
  if (!(detuning.hi >= detuning.lo) || !(n_photons.hi >= n_photons.lo) ||
      !(n_photons.lo >= 0))
    throw ConfigError("optimize_cooling: invalid bounds");
  const bool log_n = n_photons.lo > 0;
  const double Gamma_cap = opt.margin * system.mech.omega_m;

  auto make_system = [&](double Delta, double n) {
    HybridSystem s = system;
    s.cavities[0].drive.detuning = Delta;
    s.cavities[0].drive.input_power.reset();
    s.cavities[0].drive.n_photons = n;
    return s;
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    const double Delta = x(0);
    const double n = log_n ? std::exp(x(1)) : x(1);
    if (Delta < detuning.lo || Delta > detuning.hi) return inf;
    if (n < n_photons.lo || n > n_photons.hi) return inf;
    const HybridSystem s = make_system(Delta, n);
    const double Gamma =
        manyphoton_coupling(s.mech, s.cavities[0].cavity, s.cavities[0].drive);
    if (Gamma > Gamma_cap) return inf;
    try {
      const LinearModel model = linearize(s, /*rwa=*/false);
      return phonon_number(steady_state(model), 1);
    } catch (const InstabilityError&) {
      return inf;
    } catch (const NumericalError&) {
      return inf;
    }
  };

  // Coarse grid, then simplex refinement from the best cell.
  Eigen::VectorXd best = Eigen::VectorXd::Zero(2);
  double f_best = inf;
  for (int i = 0; i < opt.grid_n; ++i) {
    for (int j = 0; j < opt.grid_n; ++j) {
      Eigen::VectorXd x(2);
      x(0) = grid_value(detuning, false, i, opt.grid_n);
      const double n = grid_value(n_photons, log_n, j, opt.grid_n);
      x(1) = log_n ? std::log(n) : n;
      const double fx = objective(x);
      if (fx < f_best) {
        f_best = fx;
        best = x;
      }
    }
  }

  Eigen::VectorXd sol = best;
  if (std::isfinite(f_best)) {
    const double step0 =
        std::max((detuning.hi - detuning.lo) / (opt.grid_n - 1), 1e-12);
    const double step1 = log_n
        ? (std::log(n_photons.hi) - std::log(n_photons.lo)) / (opt.grid_n - 1)
        : std::max((n_photons.hi - n_photons.lo) / (opt.grid_n - 1), 1e-12);
    Eigen::VectorXd steps(2);
    steps << step0, step1;
    sol = nelder_mead_restarted(objective, best, steps, opt.max_iter);
    if (objective(sol) > f_best) sol = best;  // refinement must not regress
  } else {
    sol = Eigen::VectorXd(2);
    sol(0) = grid_value(detuning, false, 0, opt.grid_n);
    sol(1) = log_n ? std::log(n_photons.lo) : n_photons.lo;
  }

  OperatingPoint point;
  const double Delta = sol(0);
  const double n = log_n ? std::exp(sol(1)) : sol(1);
  point.settings = {{Delta, n}};
  point.objective = objective(sol);
  point.feasible = std::isfinite(point.objective);

  const HybridSystem s = make_system(Delta, n);
  const double Gamma =
      manyphoton_coupling(s.mech, s.cavities[0].cavity, s.cavities[0].drive);
  double max_re = quiet_nan;
  bool hurwitz = false;
  try {
    hurwitz = drift_hurwitz(linearize(s, false).drift, &max_re);
  } catch (const ConfigError&) {
  }
  point.constraints.push_back(
      {"Gamma_below_bistability_margin", Gamma, Gamma_cap, Gamma <= Gamma_cap});
  point.constraints.push_back({"drift_hurwitz", max_re, 0.0, hurwitz});
  return point;
}

OperatingPoint optimize_transfer(const HybridSystem& system, Bounds n_photons_E,
                                 Bounds n_photons_O,
                                 std::optional<double> fixed_duration,
                                 const InputState& input,
                                 const OptimizeOptions& opt) {
  system.validate();
  if (system.cavities.size() != 2)
    throw ConfigError("optimize_transfer: two-cavity systems only");
  for (const Bounds& b : {n_photons_E, n_photons_O})
    if (!(b.hi >= b.lo) || !(b.lo > 0))
      throw ConfigError(
          "optimize_transfer: photon-number bounds must be positive");
  if (fixed_duration && !(*fixed_duration > 0))
    throw ConfigError("optimize_transfer: fixed duration must be positive");

  const int em = system.cavity_index(Band::microwave);
  const int om = system.cavity_index(Band::optical);
  const double omega_m = system.mech.omega_m;
  const double x_zp = zero_point_motion(system.mech);
  const double Gamma_cap = opt.margin * omega_m;
  const bool co_optimize = !fixed_duration.has_value();

  auto rate_of = [&](int idx, double n) {
    return std::abs(system.cavities[idx].cavity.g) * x_zp * std::sqrt(n);
  };
  auto make_system = [&](double nE, double nO) {
    HybridSystem s = system;
    for (int idx : {em, om}) {
      s.cavities[idx].drive.detuning = omega_m;
      s.cavities[idx].drive.input_power.reset();
      s.cavities[idx].drive.n_photons = idx == em ? nE : nO;
    }
    return s;
  };
  // x = (log nE, log nO [, duration])
  auto objective = [&](const Eigen::VectorXd& x) {
    const double nE = std::exp(x(0));
    const double nO = std::exp(x(1));
    if (nE < n_photons_E.lo || nE > n_photons_E.hi) return inf;
    if (nO < n_photons_O.lo || nO > n_photons_O.hi) return inf;
    const double GE = rate_of(em, nE), GO = rate_of(om, nO);
    if (GE > Gamma_cap || GO > Gamma_cap) return inf;
    if (!(GE > 0) || !(GO > 0)) return inf;
    double duration;
    if (co_optimize) {
      if (x.size() < 3 || !(x(2) > 0)) return inf;
      duration = x(2);
    } else {
      duration = *fixed_duration;
    }
    TransferProtocol protocol;
    protocol.Gamma_EM = GE;
    protocol.Gamma_OM = GO;
    protocol.duration = duration;
    protocol.input = input;
    try {
      return -simulate_transfer(make_system(nE, nO), protocol,
                                TransferEngine::gaussian)
                  .fidelity;
    } catch (const ConfigError&) {
      return inf;
    } catch (const InstabilityError&) {
      return inf;
    } catch (const NumericalError&) {
      return inf;
    }
  };
  auto cell_duration = [&](double nE, double nO) {
    if (!co_optimize) return *fixed_duration;
    return ideal_swap_time(rate_of(em, nE), rate_of(om, nO));
  };

  const int dims = co_optimize ? 3 : 2;
  Eigen::VectorXd best = Eigen::VectorXd::Zero(dims);
  double f_best = inf;
  for (int i = 0; i < opt.grid_n; ++i) {
    for (int j = 0; j < opt.grid_n; ++j) {
      const double nE = grid_value(n_photons_E, true, i, opt.grid_n);
      const double nO = grid_value(n_photons_O, true, j, opt.grid_n);
      if (!(rate_of(em, nE) > 0) || !(rate_of(om, nO) > 0)) continue;
      Eigen::VectorXd x(dims);
      x(0) = std::log(nE);
      x(1) = std::log(nO);
      if (co_optimize) x(2) = cell_duration(nE, nO);
      const double fx = objective(x);
      if (fx < f_best) {
        f_best = fx;
        best = x;
      }
    }
  }

  OperatingPoint point;
  if (!std::isfinite(f_best)) {
    point.settings = {{omega_m, n_photons_E.lo}, {omega_m, n_photons_O.lo}};
    if (em == 1) std::swap(point.settings[0], point.settings[1]);
    point.objective = quiet_nan;
    point.feasible = false;
    point.duration = fixed_duration ? *fixed_duration : quiet_nan;
    return point;
  }

  const double logstep_E =
      (std::log(n_photons_E.hi) - std::log(n_photons_E.lo)) /
      std::max(opt.grid_n - 1, 1);
  const double logstep_O =
      (std::log(n_photons_O.hi) - std::log(n_photons_O.lo)) /
      std::max(opt.grid_n - 1, 1);
  Eigen::VectorXd steps(dims);
  steps(0) = std::max(logstep_E, 1e-6);
  steps(1) = std::max(logstep_O, 1e-6);
  if (co_optimize) steps(2) = 0.1 * best(2);
  Eigen::VectorXd sol =
      nelder_mead_restarted(objective, best, steps, opt.max_iter);
  if (objective(sol) > f_best) sol = best;

  const double nE = std::exp(sol(0));
  const double nO = std::exp(sol(1));
  const double GE = rate_of(em, nE), GO = rate_of(om, nO);
  point.settings.resize(2);
  point.settings[em] = {omega_m, nE};
  point.settings[om] = {omega_m, nO};
  point.objective = -objective(sol);
  point.feasible = true;
  point.duration = co_optimize ? sol(2) : *fixed_duration;
  point.constraints.push_back(
      {"Gamma_EM_below_bistability_margin", GE, Gamma_cap, GE <= Gamma_cap});
  point.constraints.push_back(
      {"Gamma_OM_below_bistability_margin", GO, Gamma_cap, GO <= Gamma_cap});
  point.constraints.push_back({"matched_rate_mismatch", std::abs(GE - GO) / GE,
                               0.0, true});
  return point;
}

namespace {

struct MetricContext {
  Scenario scenario;
  std::optional<TransferParams> transfer;
};

using MetricFn = std::function<double(const MetricContext&)>;

HybridSystem require_system(const MetricContext& ctx) {
  return ctx.scenario.system();
}

double metric_fidelity(const MetricContext& ctx) {
  const HybridSystem sys = require_system(ctx);
  if (sys.cavities.size() != 2)
    throw ConfigError("sweep: fidelity metric needs both cavities");
  TransferProtocol protocol;
  TransferEngine engine = TransferEngine::gaussian;
  TransferOptions options;
  if (ctx.transfer) {
    protocol = ctx.transfer->protocol;
    engine = ctx.transfer->engine;
    if (!ctx.transfer->oracle_dims.empty())
      options.oracle_dims = ctx.transfer->oracle_dims;
  }
  const int em = sys.cavity_index(Band::microwave);
  const int om = sys.cavity_index(Band::optical);
  protocol.Gamma_EM = manyphoton_coupling(sys.mech, sys.cavities[em].cavity,
                                          sys.cavities[em].drive);
  protocol.Gamma_OM = manyphoton_coupling(sys.mech, sys.cavities[om].cavity,
                                          sys.cavities[om].drive);
  if (!ctx.transfer || !ctx.transfer->duration_given)
    protocol.duration = ideal_swap_time(protocol.Gamma_EM, protocol.Gamma_OM);
  return simulate_transfer(sys, protocol, engine, options).fidelity;
}

const std::vector<std::pair<std::string, MetricFn>>& metric_table() {
  static const std::vector<std::pair<std::string, MetricFn>> table = {
      {"n_bath",
       [](const MetricContext& c) {
         if (!c.scenario.mech) throw ConfigError("sweep: n_bath needs mech");
         return thermal_occupation(*c.scenario.mech);
       }},
      {"n_final",
       [](const MetricContext& c) {
         const HybridSystem sys = require_system(c);
         return phonon_number(steady_state(linearize(sys, false)), 1);
       }},
      {"n_final_closed_form",
       [](const MetricContext& c) {
         const HybridSystem sys = require_system(c);
         const auto rate = cooling_rate(sys.mech, sys.cavities[0].cavity,
                                        sys.cavities[0].drive);
         return final_occupation(sys.mech, rate.rate,
                                 FinalOccupationModel::rate_balance);
       }},
      {"Gamma_Hz",
       [](const MetricContext& c) {
         const HybridSystem sys = require_system(c);
         return manyphoton_coupling(sys.mech, sys.cavities[0].cavity,
                                    sys.cavities[0].drive) /
                two_pi;
       }},
      {"Gamma_cool_Hz",
       [](const MetricContext& c) {
         const HybridSystem sys = require_system(c);
         return cooling_rate(sys.mech, sys.cavities[0].cavity,
                             sys.cavities[0].drive)
                    .rate /
                two_pi;
       }},
      {"fidelity", metric_fidelity},
      {"f1_Hz",
       [](const MetricContext& c) {
         if (!c.scenario.beam) throw ConfigError("sweep: f1_Hz needs beam");
         return beam_frequency(*c.scenario.beam, 1);
       }},
      {"S_F",
       [](const MetricContext& c) {
         if (!c.scenario.mech) throw ConfigError("sweep: S_F needs mech");
         return thermal_force_psd(*c.scenario.mech);
       }},
      {"eta",
       [](const MetricContext& c) {
         if (!c.scenario.detection)
           throw ConfigError("sweep: eta needs detection");
         return detection_efficiency(*c.scenario.detection);
       }},
  };
  return table;
}

void apply_axis(Scenario& scenario, const std::string& key, double value) {
  auto cavity0 = [&]() -> DrivenCavity& {
    if (scenario.cavities.empty())
      throw ConfigError("sweep: axis '" + key + "' needs a cavity");
    return scenario.cavities.front();
  };
  auto mech = [&]() -> MechanicalMode& {
    if (!scenario.mech)
      throw ConfigError("sweep: axis '" + key + "' needs mech");
    return *scenario.mech;
  };
  if (key == "detuning_Hz") {
    cavity0().drive.detuning = two_pi * value;
  } else if (key == "n_photons") {
    auto& drive = cavity0().drive;
    drive.input_power.reset();
    drive.n_photons = value;
  } else if (key == "gamma_Hz") {
    auto& cav = cavity0().cavity;
    const double ratio = cav.gamma > 0 ? cav.gamma_ext / cav.gamma : 0.0;
    cav.gamma = two_pi * value;
    cav.gamma_ext = ratio * cav.gamma;
  } else if (key == "g_Hz_per_m") {
    cavity0().cavity.g = two_pi * value;
  } else if (key == "omega_m_Hz") {
    mech().omega_m = two_pi * value;
  } else if (key == "gamma_m_Hz") {
    mech().gamma_m = two_pi * value;
  } else if (key == "mass_kg") {
    mech().mass = value;
  } else if (key == "T_bath_K") {
    mech().T_bath = value;
  } else if (key == "stress_Pa") {
    if (!scenario.beam) throw ConfigError("sweep: axis 'stress_Pa' needs beam");
    scenario.beam->stress = value;
  } else if (key == "n_add") {
    if (!scenario.detection)
      throw ConfigError("sweep: axis 'n_add' needs detection");
    scenario.detection->n_add = value;
  } else {
    throw ConfigError("sweep: unknown axis key '" + key + "'");
  }
}

}  // namespace

const std::vector<std::string>& sweep_axis_keys() {
  static const std::vector<std::string> keys = {
      "detuning_Hz", "n_photons", "gamma_Hz",  "g_Hz_per_m", "omega_m_Hz",
      "gamma_m_Hz",  "mass_kg",   "T_bath_K",  "stress_Pa",  "n_add"};
  return keys;
}

const std::vector<std::string>& sweep_metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : metric_table()) out.push_back(name);
    return out;
  }();
  return names;
}

SweepTable run_sweep(const ParsedConfig& cfg, int n_threads) {
  if (!cfg.sweep) throw ConfigError("sweep: config has no sweep section");
  const SweepParams& params = *cfg.sweep;
  if (params.axes.empty() || params.axes.size() > 3)
    throw ConfigError("sweep: between 1 and 3 axes required");

  const MetricFn* metric = nullptr;
  for (const auto& [name, fn] : metric_table())
    if (name == params.metric) metric = &fn;
  if (!metric) {
    std::string names;
    for (const auto& n : sweep_metric_names())
      names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("sweep: unknown metric '" + params.metric +
                      "' (available: " + names + ")");
  }

  SweepTable table;
  table.axes = params.axes;
  table.metric = params.metric;
  std::size_t total = 1;
  for (const SweepAxis& axis : params.axes) {
    if (axis.n < 1 || axis.n > 1024)
      throw ConfigError("sweep: axis '" + axis.key +
                        "' must have between 1 and 1024 points");
    if (!(std::isfinite(axis.min) && std::isfinite(axis.max)) ||
        axis.max < axis.min)
      throw ConfigError("sweep: axis '" + axis.key + "' has an invalid range");
    if (axis.log_spacing && !(axis.min > 0))
      throw ConfigError("sweep: axis '" + axis.key +
                        "' needs min > 0 for log spacing");
    bool known = false;
    for (const auto& k : sweep_axis_keys()) known = known || k == axis.key;
    if (!known) throw ConfigError("sweep: unknown axis key '" + axis.key + "'");

    std::vector<double> grid(axis.n);
    for (int i = 0; i < axis.n; ++i)
      grid[i] = grid_value({axis.min, axis.max}, axis.log_spacing, i, axis.n);
    table.grids.push_back(std::move(grid));
    total *= static_cast<std::size_t>(axis.n);
  }

  table.values.assign(total, quiet_nan);

  auto evaluate = [&](std::size_t flat) {
    MetricContext ctx{cfg.scenario, cfg.transfer};
    std::size_t rem = flat;
    for (std::size_t a = params.axes.size(); a-- > 0;) {
      const std::size_t n = table.grids[a].size();
      apply_axis(ctx.scenario, params.axes[a].key, table.grids[a][rem % n]);
      rem /= n;
    }
    try {
      return (*metric)(ctx);
    } catch (const ConfigError&) {
      return quiet_nan;
    } catch (const InstabilityError&) {
      return quiet_nan;
    } catch (const NumericalError&) {
      return quiet_nan;
    } catch (const TruncationOverflowError&) {
      return quiet_nan;
    } catch (const DegenerateSteadyStateError&) {
      return quiet_nan;
    }
  };

  const int threads = std::clamp(n_threads, 1, 16);
  if (threads == 1 || total < 4) {
    for (std::size_t i = 0; i < total; ++i) table.values[i] = evaluate(i);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += threads)
          table.values[i] = evaluate(i);
      });
    }
    for (auto& worker : workers) worker.join();
  }
  return table;
}

}  // namespace cavitymech
