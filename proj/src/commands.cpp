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

#include "cavitymech/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavitymech/constants.hpp"
#include "cavitymech/fock.hpp"
#include "cavitymech/gaussian.hpp"
#include "cavitymech/model.hpp"
#include "cavitymech/optimize.hpp"
#include "cavitymech/resonator.hpp"
#include "cavitymech/transfer.hpp"

namespace cavitymech::commands {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// Round to one significant figure (104.2 -> 100, 0.0164 -> 0.02).
double one_sig(double x) {
  if (x == 0 || !std::isfinite(x)) return x;
  const double p = std::pow(10.0, std::floor(std::log10(std::abs(x))));
  return std::round(x / p) * p;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void flatten_csv(const Json& node, const std::string& prefix,
                 std::string& out) {
  if (node.is_object()) {
    for (const auto& item : node.items())
      flatten_csv(item.value(),
                  prefix.empty() ? item.key() : prefix + "." + item.key(), out);
  } else if (node.is_array()) {
    int i = 0;
    for (const auto& item : node)
      flatten_csv(item, prefix + "[" + std::to_string(i++) + "]", out);
  } else {
    out += prefix + ",";
    if (node.is_number())
      out += fmt17(node.get<double>());
    else if (node.is_boolean())
      out += node.get<bool>() ? "true" : "false";
    else if (node.is_string())
      out += node.get<std::string>();
    else
      out += "n/a";
    out += "\n";
  }
}

// Scalar reports serialize as JSON or as a key,value CSV table.
std::string render(const Json& report, Format format) {
  if (format == Format::json) return dump_json(report);
  std::string out = "key,value\n";
  flatten_csv(report, "", out);
  return out;
}

Json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json flag_json(const RegimeFlag& flag) {
  return Json{{"satisfied", flag.satisfied},
              {"lhs", number_or_null(flag.lhs)},
              {"rhs", number_or_null(flag.rhs)}};
}

Json regimes_json(const RegimeReport& report) {
  return Json{{"resolved_sideband", flag_json(report.resolved_sideband)},
              {"strong_coupling", flag_json(report.strong_coupling)},
              {"bistability_risk", flag_json(report.bistability_risk)},
              {"quantum_enabled",
               Json{{"satisfied", report.quantum.enabled},
                    {"qf_product_Hz", number_or_null(report.quantum.qf_product_Hz)},
                    {"threshold_Hz", number_or_null(report.quantum.threshold_Hz)}}}};
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("format must be \"csv\" or \"json\", got \"" + name + "\"");
}

Artifact run_quantities(const ParsedConfig& cfg, Format) {
  std::ostringstream out;
  const Scenario& sc = cfg.scenario;

  if (sc.mech) {
    const MechanicalMode& mech = *sc.mech;
    const double n_lin = thermal_occupation(mech, OccupationModel::linear);
    const double n_be = thermal_occupation(mech, OccupationModel::bose_einstein);
    const QuantumEnabled qe = quantum_enabled(mech);
    out << "mech.omega_m_Hz: " << fmt6(mech.omega_m / two_pi) << "\n";
    out << "mech.gamma_m_Hz: " << fmt6(mech.gamma_m / two_pi) << "\n";
    out << "mech.quality: " << fmt6(mech.quality()) << "\n";
    out << "mech.T_bath_K: " << fmt6(mech.T_bath) << "\n";
    out << "mech.x_zp_m: " << fmt6(zero_point_motion(mech)) << "\n";
    {
      char line[96];
      std::snprintf(line, sizeof(line), "mech.n_bath: %.1f (about %g)\n",
                    n_lin, one_sig(n_lin));
      out << line;
    }
    out << "mech.n_bath_bose_einstein: " << fmt6(n_be) << "\n";
    out << "mech.S_F_N2_per_Hz: " << fmt6(thermal_force_psd(mech)) << "\n";
    out << "mech.Qf_product_Hz: " << fmt6(qe.qf_product_Hz) << "\n";
    out << "mech.quantum_enabled: " << (qe.enabled ? "yes" : "no")
        << " (threshold " << fmt6(qe.threshold_Hz) << " Hz)\n";
  } else {
    out << "mech: n/a\n";
  }

  if (sc.mech && !sc.cavities.empty()) {
    for (const auto& dc : sc.cavities) {
      const std::string tag = std::string("cavity.") + band_label(dc.cavity.band);
      const double n_photons = intracavity_photons(dc.cavity, dc.drive);
      const double Gamma = manyphoton_coupling(*sc.mech, dc.cavity, dc.drive);
      out << tag << ".gamma_Hz: " << fmt6(dc.cavity.gamma / two_pi) << "\n";
      out << tag << ".detuning_Hz: " << fmt6(dc.drive.detuning / two_pi) << "\n";
      out << tag << ".n_photons: " << fmt6(n_photons) << "\n";
      out << tag << ".Gamma_Hz: " << fmt6(Gamma / two_pi) << "\n";
      if (dc.cavity.gamma > 0) {
        const CoolingRate rate = cooling_rate(*sc.mech, dc.cavity, dc.drive);
        out << tag << ".Gamma_cool_Hz: " << fmt6(rate.rate / two_pi)
            << (rate.detuning_matched ? "" : " (detuning not matched to omega_m)")
            << "\n";
        out << tag << ".n_final_rate_balance: "
            << fmt6(final_occupation(*sc.mech, rate.rate,
                                     FinalOccupationModel::rate_balance))
            << "\n";
        if (rate.rate > 0)
          out << tag << ".n_final_ratio: "
              << fmt6(final_occupation(*sc.mech, rate.rate,
                                       FinalOccupationModel::ratio))
              << "\n";
        else
          out << tag << ".n_final_ratio: n/a\n";
      } else {
        out << tag << ".Gamma_cool_Hz: n/a\n";
      }
    }
    const RegimeReport regimes = classify_regimes(sc.system());
    auto flag_line = [&](const char* name, const RegimeFlag& f,
                         const char* rel) {
      out << "regimes." << name << ": " << (f.satisfied ? "yes" : "no") << " ("
          << fmt6(f.lhs) << " " << rel << " " << fmt6(f.rhs) << " rad/s)\n";
    };
    flag_line("resolved_sideband", regimes.resolved_sideband, "vs");
    flag_line("strong_coupling", regimes.strong_coupling, "vs");
    flag_line("bistability_risk", regimes.bistability_risk, "vs");
  } else {
    out << "cavities: n/a\n";
  }

  if (sc.detection) {
    const double eta = detection_efficiency(*sc.detection);
    char line[96];
    std::snprintf(line, sizeof(line), "detection.eta: %.3g (about %g)\n", eta,
                  one_sig(eta));
    out << line;
  } else {
    out << "detection.eta: n/a\n";
  }

  if (sc.beam) {
    out << "beam.f1_Hz: " << fmt6(beam_frequency(*sc.beam, 1)) << "\n";
  } else {
    out << "beam: n/a\n";
  }

  return {out.str(), 0};
}

Artifact run_cool(const ParsedConfig& cfg, Format format) {
  const HybridSystem sys = cfg.scenario.system();
  const CoolParams params = cfg.cool.value_or(CoolParams{});

  Json report;
  report["model"] = params.rwa ? "rwa" : "full";
  report["n_bath"] = thermal_occupation(sys.mech);

  Json cavities = Json::array();
  for (const auto& dc : sys.cavities) {
    Json entry;
    entry["band"] = band_label(dc.cavity.band);
    entry["detuning_Hz"] = dc.drive.detuning / two_pi;
    entry["n_photons"] = intracavity_photons(dc.cavity, dc.drive);
    entry["Gamma_Hz"] =
        manyphoton_coupling(sys.mech, dc.cavity, dc.drive) / two_pi;
    if (dc.cavity.gamma > 0) {
      const CoolingRate rate = cooling_rate(sys.mech, dc.cavity, dc.drive);
      entry["Gamma_cool_Hz"] = rate.rate / two_pi;
      entry["detuning_matched"] = rate.detuning_matched;
    } else {
      entry["Gamma_cool_Hz"] = nullptr;
      entry["detuning_matched"] = false;
    }
    cavities.push_back(entry);
  }
  report["cavities"] = cavities;

  const auto& first = sys.cavities.front();
  if (first.cavity.gamma > 0) {
    const CoolingRate rate = cooling_rate(sys.mech, first.cavity, first.drive);
    report["n_final_rate_balance"] = final_occupation(
        sys.mech, rate.rate, FinalOccupationModel::rate_balance);
    report["n_final_ratio"] =
        rate.rate > 0 ? Json(final_occupation(sys.mech, rate.rate,
                                              FinalOccupationModel::ratio))
                      : Json(nullptr);
  } else {
    report["n_final_rate_balance"] = nullptr;
    report["n_final_ratio"] = nullptr;
  }

  int exit_code = 0;
  try {
    const LinearModel model = linearize(sys, params.rwa);
    const GaussianState steady = steady_state(model);
    report["stable"] = true;
    report["n_final"] = phonon_number(steady, 1);
    Json occupations;
    for (int m = 0; m < steady.modes(); ++m)
      occupations[steady.mode_labels[m]] = phonon_number(steady, m);
    report["mode_occupations"] = occupations;
  } catch (const InstabilityError& err) {
    report["stable"] = false;
    report["n_final"] = nullptr;
    report["instability"] = err.what();
    exit_code = 2;
  }
  report["regimes"] = regimes_json(classify_regimes(sys));
  return {render(report, format), exit_code};
}

Artifact run_spectrum(const ParsedConfig& cfg, Format format) {
  if (!cfg.scenario.mech)
    throw ConfigError("config: spectrum needs a \"mech\" section");
  if (!cfg.spectrum)
    throw ConfigError("config: spectrum needs a \"spectrum\" section");
  const SpectrumParams& params = *cfg.spectrum;

  std::vector<double> grid(params.n_points);
  for (int i = 0; i < params.n_points; ++i) {
    const double t = double(i) / double(params.n_points - 1);
    grid[i] = params.log_spacing
                  ? std::exp(std::log(params.freq_min_Hz) +
                             t * (std::log(params.freq_max_Hz) -
                                  std::log(params.freq_min_Hz)))
                  : params.freq_min_Hz + t * (params.freq_max_Hz - params.freq_min_Hz);
  }
  const SpectrumSeries series = displacement_spectrum(
      *cfg.scenario.mech, cfg.scenario.mech->T_bath, grid,
      params.imprecision_floor);

  if (format == Format::json) {
    Json report;
    report["freq_Hz"] = series.freq_Hz;
    report["S_x_m2_per_Hz"] = series.S_x;
    return {dump_json(report), 0};
  }
  std::string out = "freq_Hz,S_x_m2_per_Hz\n";
  for (std::size_t i = 0; i < series.freq_Hz.size(); ++i)
    out += fmt17(series.freq_Hz[i]) + "," + fmt17(series.S_x[i]) + "\n";
  return {out, 0};
}

Artifact run_transfer(const ParsedConfig& cfg, Format format) {
  const HybridSystem sys = cfg.scenario.system();
  if (!cfg.transfer)
    throw ConfigError("config: transfer needs a \"transfer\" section");
  TransferParams params = *cfg.transfer;
  if (!params.duration_given)
    params.protocol.duration =
        ideal_swap_time(params.protocol.Gamma_EM, params.protocol.Gamma_OM);

  TransferOptions options;
  if (!params.oracle_dims.empty()) options.oracle_dims = params.oracle_dims;
  const TransferResult result =
      simulate_transfer(sys, params.protocol, params.engine, options);

  Json report;
  report["fidelity"] = result.fidelity;
  if (params.report_raw) report["raw_fidelity"] = result.raw_fidelity;
  report["efficiency"] =
      result.efficiency ? Json(*result.efficiency) : Json(nullptr);
  report["added_noise"] = result.added_noise;
  report["budget"] =
      Json{{"mech_decoherence_Hz", result.budget.mech_decoherence / two_pi},
           {"cavity_loss_E_Hz", result.budget.cavity_loss_E / two_pi},
           {"cavity_loss_O_Hz", result.budget.cavity_loss_O / two_pi},
           {"Gamma_EM_Hz", result.budget.Gamma_EM / two_pi},
           {"Gamma_OM_Hz", result.budget.Gamma_OM / two_pi}};
  report["engine"] = result.engine;
  report["duration_s"] = result.duration_s;
  report["direction"] =
      params.protocol.direction == TransferDirection::EtoO ? "EtoO" : "OtoE";
  return {render(report, format), 0};
}

Artifact run_design(const ParsedConfig& cfg, Format format) {
  if (!cfg.scenario.beam)
    throw ConfigError("config: design needs a \"beam\" section");
  if (!cfg.design)
    throw ConfigError("config: design needs a \"design\" section");
  const DesignReport report = design_report(
      *cfg.scenario.beam, cfg.design->mechanical_Q, cfg.design->T_bath_K);

  Json out;
  out["f1_Hz"] = report.f1_Hz;
  out["Qf_product_Hz"] = report.Qf_Hz;
  out["quantum_enabled"] = report.quantum_enabled;
  out["threshold_Hz"] = report.threshold_Hz;
  out["effective_mass_kg"] = report.effective_mass_kg;
  out["x_zp_m"] = report.x_zp_m;
  out["S_F_N2_per_Hz"] = report.S_F;
  return {render(out, format), 0};
}

Artifact run_optimize(const ParsedConfig& cfg, Format format, int threads) {
  (void)threads;  // grid evaluation is kept sequential for reproducibility
  const HybridSystem sys = cfg.scenario.system();
  if (!cfg.optimize)
    throw ConfigError("config: optimize needs an \"optimize\" section");
  const OptimizeParams& params = *cfg.optimize;

  OptimizeOptions options;
  options.margin = params.margin;

  OperatingPoint point;
  std::string target;
  if (params.target == OptimizeParams::Target::cooling) {
    target = "cooling";
    point = optimize_cooling(
        sys,
        {two_pi * params.detuning_min_Hz, two_pi * params.detuning_max_Hz},
        {params.n_photons_min, params.n_photons_max}, options);
  } else {
    target = "transfer";
    InputState input;
    input.kind = InputState::Kind::coherent;
    input.alpha = 1.0;
    if (cfg.transfer) input = cfg.transfer->protocol.input;
    std::optional<double> fixed;
    if (!params.co_optimize_duration) fixed = params.fixed_duration_s;
    point = optimize_transfer(
        sys, {params.n_photons_E_min, params.n_photons_E_max},
        {params.n_photons_O_min, params.n_photons_O_max}, fixed, input,
        options);
  }

  Json report;
  report["target"] = target;
  report["feasible"] = point.feasible;
  report["objective"] = number_or_null(point.objective);
  Json settings = Json::array();
  for (std::size_t i = 0; i < point.settings.size(); ++i) {
    settings.push_back(
        Json{{"band", band_label(sys.cavities[i].cavity.band)},
             {"detuning_Hz", point.settings[i].detuning / two_pi},
             {"n_photons", point.settings[i].n_photons}});
  }
  report["settings"] = settings;
  report["duration_s"] =
      point.duration ? number_or_null(*point.duration) : Json(nullptr);
  Json constraints = Json::array();
  for (const auto& c : point.constraints)
    constraints.push_back(Json{{"name", c.name},
                               {"value", number_or_null(c.value)},
                               {"bound", c.bound},
                               {"ok", c.ok}});
  report["constraints"] = constraints;
  return {render(report, format), point.feasible ? 0 : 2};
}

Artifact run_sweep(const ParsedConfig& cfg, Format format, int threads) {
  const SweepTable table = cavitymech::run_sweep(cfg, threads);

  if (format == Format::json) {
    Json report;
    Json axes = Json::array();
    for (std::size_t a = 0; a < table.axes.size(); ++a)
      axes.push_back(Json{{"key", table.axes[a].key},
                          {"values", table.grids[a]}});
    report["axes"] = axes;
    report["metric"] = table.metric;
    Json values = Json::array();
    for (double v : table.values) values.push_back(number_or_null(v));
    report["values"] = values;
    return {dump_json(report), 0};
  }

  std::string out;
  for (const auto& axis : table.axes) out += axis.key + ",";
  out += table.metric + "\n";
  const std::size_t n_axes = table.axes.size();
  for (std::size_t flat = 0; flat < table.values.size(); ++flat) {
    std::size_t rem = flat;
    std::vector<double> coords(n_axes);
    for (std::size_t a = n_axes; a-- > 0;) {
      const std::size_t n = table.grids[a].size();
      coords[a] = table.grids[a][rem % n];
      rem /= n;
    }
    for (double c : coords) out += fmt17(c) + ",";
    out += fmt17(table.values[flat]) + "\n";
  }
  return {out, 0};
}

namespace {

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

// Fast built-in scenario: resolved-sideband cooling at n_bath = 1.
HybridSystem check_cooling_system() {
  HybridSystem sys;
  sys.mech.omega_m = two_pi * 10e6;
  sys.mech.gamma_m = two_pi * 100.0;
  sys.mech.mass = 1e-15;
  sys.mech.T_bath = constants.hbar * sys.mech.omega_m / constants.k_B;  // n=1
  DrivenCavity dc;
  dc.cavity.band = Band::optical;
  dc.cavity.gamma = two_pi * 0.2e6;
  dc.cavity.gamma_ext = dc.cavity.gamma;
  dc.drive.detuning = sys.mech.omega_m;
  const double x_zp = zero_point_motion(sys.mech);
  const double Gamma = two_pi * 0.01e6;
  dc.cavity.g = 1.0;
  dc.drive.n_photons = (Gamma / x_zp) * (Gamma / x_zp);
  sys.cavities.push_back(dc);
  return sys;
}

HybridSystem check_transfer_system(double gamma_m, double n_bath) {
  HybridSystem sys;
  sys.mech.omega_m = two_pi * 10e6;
  sys.mech.gamma_m = gamma_m;
  sys.mech.mass = 1e-15;
  sys.mech.T_bath = n_bath > 0
                        ? n_bath * constants.hbar * sys.mech.omega_m / constants.k_B
                        : 0.0;
  for (Band band : {Band::microwave, Band::optical}) {
    DrivenCavity dc;
    dc.cavity.band = band;
    dc.cavity.gamma = 0.0;
    dc.cavity.gamma_ext = 0.0;
    dc.cavity.g = 1.0;
    dc.drive.detuning = sys.mech.omega_m;
    dc.drive.n_photons = 0.0;
    sys.cavities.push_back(dc);
  }
  return sys;
}

}  // namespace

Artifact run_oracle_check(const ParsedConfig&, Format) {
  std::vector<CheckRow> rows;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rows.push_back({name, pass, detail});
  };

  {
    // Lyapunov steady state vs the closed-form cooling limit.
    const HybridSystem sys = check_cooling_system();
    const double n_lyap = phonon_number(steady_state(linearize(sys, false)), 1);
    const auto rate = cooling_rate(sys.mech, sys.cavities[0].cavity,
                                   sys.cavities[0].drive);
    const double n_closed = final_occupation(sys.mech, rate.rate,
                                             FinalOccupationModel::rate_balance);
    const double rel = std::abs(n_lyap - n_closed) / n_closed;
    add("cooling_gaussian_vs_closed_form", rel < 0.05,
        "rel " + fmt6(rel) + " (tol 0.05)");

    // Lindblad steady state vs the Gaussian one.
    fock::FockSpec spec{{20, 6}, {"mech", "optical"}};
    const fock::SpMat H = fock::build_hamiltonian(
        sys, spec, fock::HamiltonianForm::full_parametric);
    const auto collapse = fock::collapse_operators(sys, spec);
    const fock::DensityOperator rho =
        fock::lindblad_steady_state(H, collapse, spec);
    const double n_oracle = fock::expectation_number(rho, 0);
    const double rel2 = std::abs(n_oracle - n_lyap) / n_lyap;
    add("cooling_oracle_vs_gaussian", rel2 < 0.02,
        "rel " + fmt6(rel2) + " (tol 0.02)");
  }

  {
    // Lossless transfer at the ideal swap time.
    const double Gamma = two_pi * 100e3;
    TransferProtocol protocol;
    protocol.Gamma_EM = Gamma;
    protocol.Gamma_OM = Gamma;
    protocol.duration = ideal_swap_time(Gamma, Gamma);
    protocol.input.kind = InputState::Kind::coherent;
    protocol.input.alpha = 1.0;
    const HybridSystem lossless = check_transfer_system(two_pi * 1e-6, 0.0);
    const TransferResult g =
        simulate_transfer(lossless, protocol, TransferEngine::gaussian);
    add("transfer_lossless_gaussian_fidelity", g.fidelity >= 0.9999,
        "fidelity " + fmt6(g.fidelity) + " (tol >= 0.9999)");

    // Cross-engine comparison with mechanical decoherence on.
    const HybridSystem lossy = check_transfer_system(two_pi * 1e3, 1.0);
    const TransferResult g2 =
        simulate_transfer(lossy, protocol, TransferEngine::gaussian);
    TransferOptions options;
    options.oracle_dims = {8, 8, 8};
    const TransferResult o2 =
        simulate_transfer(lossy, protocol, TransferEngine::oracle, options);
    const double rel = std::abs(g2.fidelity - o2.fidelity) / o2.fidelity;
    add("transfer_gaussian_vs_oracle", rel < 0.02,
        "gaussian " + fmt6(g2.fidelity) + " oracle " + fmt6(o2.fidelity) +
            " rel " + fmt6(rel) + " (tol 0.02)");
  }

  {
    // Beam limits against the two analytic oracles.
    BeamSpec beam;
    beam.length = 100e-6;
    beam.width = 100e-9;
    beam.thickness = 100e-9;
    beam.youngs_modulus = 250e9;
    beam.density = 3000.0;
    beam.stress = 0.0;
    const double lambda1 = 4.7300407448627;
    const double f_flex = lambda1 * lambda1 /
                          (two_pi * beam.length * beam.length) *
                          std::sqrt(beam.youngs_modulus * beam.bending_moment() /
                                    (beam.density * beam.area()));
    const double rel_flex =
        std::abs(beam_frequency(beam, 1) - f_flex) / f_flex;
    add("beam_zero_stress_vs_flexural", rel_flex < 1e-6,
        "rel " + fmt6(rel_flex) + " (tol 1e-6)");

    beam.stress = 1e9;
    const double f_string =
        std::sqrt(beam.stress / beam.density) / (2.0 * beam.length);
    const double rel_string =
        std::abs(beam_frequency(beam, 1) - f_string) / f_string;
    add("beam_high_stress_vs_string", rel_string < 0.01,
        "rel " + fmt6(rel_string) + " (tol 0.01)");
  }

  bool all_pass = true;
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.name.size());
  std::ostringstream out;
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    out << row.name << std::string(width - row.name.size() + 2, ' ')
        << (row.pass ? "pass" : "FAIL") << "  " << row.detail << "\n";
  }
  out << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
  return {out.str(), all_pass ? 0 : 2};
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericalError("cannot open output file " + tmp);
    out << text;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw NumericalError("failed writing output file " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw NumericalError("failed moving output into place at " + path);
  }
}

}  // namespace cavitymech::commands
