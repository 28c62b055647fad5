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

// End-to-end tests driving the installed CLI binary. CTest points
// CAVITYMECH_CLI at the built executable.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

std::string cli_path() {
  const char* path = std::getenv("CAVITYMECH_CLI");
  REQUIRE_MESSAGE(path != nullptr,
                  "CAVITYMECH_CLI must point at the CLI binary");
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
    result.output.append(buf, n);
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Two red-detuned driven cavities plus detection, beam, and run sections.
const char* kFullConfig = R"json({
  "mech": {"omega_m_Hz": 1e7, "gamma_m_Hz": 100.0, "mass_kg": 1e-15,
           "T_bath_K": 0.05},
  "cavities": [
    {"band": "microwave", "omega_c_Hz": 7e9, "gamma_Hz": 2e3,
     "g_Hz_per_m": 3e14, "drive": {"detuning_Hz": 1e7, "n_photons": 1e5}},
    {"band": "optical", "omega_c_Hz": 2e14, "gamma_Hz": 5e5,
     "g_Hz_per_m": 3e14, "drive": {"detuning_Hz": 1e7, "n_photons": 1e6}}
  ],
  "detection": {"n_add": 30.0},
  "beam": {"length_m": 1e-4, "width_m": 1e-6, "thickness_m": 1e-7,
           "youngs_modulus_Pa": 2.5e11, "density_kg_per_m3": 3100.0,
           "stress_Pa": 1e9},
  "design": {"mechanical_Q": 5e5, "T_bath_K": 0.1},
  "cool": {"model": "full"},
  "spectrum": {"freq_min_Hz": 9.9e6, "freq_max_Hz": 1.01e7, "n_points": 101},
  "transfer": {"Gamma_EM_Hz": 1e5, "Gamma_OM_Hz": 8e4, "direction": "EtoO",
               "engine": "gaussian",
               "input": {"kind": "coherent", "alpha_re": 1.0, "alpha_im": 0.0},
               "report_raw": true}
})json";

// One strongly driven cavity; also carries a one-point sweep over the same
// drive so the sweep metric can be checked against the cool report.
const char* kSingleConfig = R"json({
  "mech": {"omega_m_Hz": 1e7, "gamma_m_Hz": 100.0, "mass_kg": 1e-15,
           "T_bath_K": 0.05},
  "cavities": [
    {"band": "optical", "omega_c_Hz": 2e14, "gamma_Hz": 1e5,
     "g_Hz_per_m": 3e15, "drive": {"detuning_Hz": 1e7, "n_photons": 1e6}}
  ],
  "cool": {"model": "full"},
  "sweep": {"axes": [{"key": "n_photons", "min": 1e6, "max": 1e6, "n": 1}],
            "metric": "n_final"}
})json";

std::string full_config_path() {
  static const std::string path = [] {
    const std::string p = "/tmp/cavitymech_cli_full.json";
    write_file(p, kFullConfig);
    return p;
  }();
  return path;
}

std::string single_config_path() {
  static const std::string path = [] {
    const std::string p = "/tmp/cavitymech_cli_single.json";
    write_file(p, kSingleConfig);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("quantities prints the headline numbers and repeats exactly") {
  const std::string cmd = "quantities --config " + full_config_path();
  const RunResult first = run_cli(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("mech.n_bath: 104.2 (about 100)") !=
        std::string::npos);
  CHECK(first.output.find("detection.eta: 0.0164 (about 0.02)") !=
        std::string::npos);
  CHECK(first.output.find("cavity.microwave.Gamma_Hz:") != std::string::npos);
  CHECK(first.output.find("cavity.optical.Gamma_cool_Hz:") !=
        std::string::npos);
  CHECK(first.output.find("regimes.resolved_sideband: yes") !=
        std::string::npos);
  CHECK(first.output.find("beam.f1_Hz:") != std::string::npos);

  const RunResult second = run_cli(cmd);
  CHECK(second.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("cool reports a stable steady state as json") {
  const std::string cmd =
      "cool --config " + full_config_path() + " --format json";
  const RunResult run = run_cli(cmd);
  REQUIRE(run.exit_code == 0);
  const json report = json::parse(run.output);
  CHECK(report.at("stable").get<bool>());
  CHECK(report.at("n_final").get<double>() > 0.0);
  CHECK(report.at("cavities").size() == 2);
  CHECK(report.at("model") == "full");

  const RunResult again = run_cli(cmd);
  CHECK(run.output == again.output);

  // The same report flattens to a key,value table.
  const RunResult csv =
      run_cli("cool --config " + full_config_path() + " --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(lines_of(csv.output).front() == "key,value");
  CHECK(csv.output.find("n_final,") != std::string::npos);
}

TEST_CASE("unstable cooling completes with exit code 2") {
  const std::string path = "/tmp/cavitymech_cli_unstable.json";
  json cfg = json::parse(kSingleConfig);
  cfg["cavities"][0]["drive"]["detuning_Hz"] = -1e7;
  cfg["cavities"][0]["drive"]["n_photons"] = 1e8;
  cfg.erase("sweep");
  write_file(path, cfg.dump());

  const RunResult run = run_cli("cool --config " + path + " --format json");
  CHECK(run.exit_code == 2);
  const json report = json::parse(run.output);
  CHECK_FALSE(report.at("stable").get<bool>());
  CHECK(report.at("n_final").is_null());
}

TEST_CASE("spectrum emits the documented csv layout") {
  const std::string cmd = "spectrum --config " + full_config_path();
  const RunResult run = run_cli(cmd);
  REQUIRE(run.exit_code == 0);
  const std::vector<std::string> lines = lines_of(run.output);
  REQUIRE(lines.size() == 102);  // header plus n_points rows
  CHECK(lines.front() == "freq_Hz,S_x_m2_per_Hz");
  CHECK(run.output == run_cli(cmd).output);
}

TEST_CASE("transfer reports fidelity and the loss budget") {
  const RunResult run =
      run_cli("transfer --config " + full_config_path() + " --format json");
  REQUIRE(run.exit_code == 0);
  const json report = json::parse(run.output);
  const double fidelity = report.at("fidelity").get<double>();
  CHECK(fidelity > 0.0);
  CHECK(fidelity <= 1.0 + 1e-12);
  CHECK(report.contains("raw_fidelity"));
  CHECK(report.at("engine") == "gaussian");
  CHECK(report.at("direction") == "EtoO");
  CHECK(report.at("duration_s").get<double>() > 0.0);
  CHECK(report.at("budget").contains("mech_decoherence_Hz"));
}

TEST_CASE("design reports the beam figures") {
  const RunResult run =
      run_cli("design --config " + full_config_path() + " --format json");
  REQUIRE(run.exit_code == 0);
  const json report = json::parse(run.output);
  CHECK(report.at("f1_Hz").get<double>() > 1e6);
  CHECK(report.at("Qf_product_Hz").get<double>() ==
        doctest::Approx(5e5 * report.at("f1_Hz").get<double>()));
  CHECK(report.contains("quantum_enabled"));
  CHECK(report.at("x_zp_m").get<double>() > 0.0);
}

TEST_CASE("optimize exit code distinguishes feasible from infeasible") {
  json cfg = json::parse(kSingleConfig);
  cfg.erase("sweep");
  cfg["optimize"] = {{"target", "cooling"},    {"detuning_min_Hz", 5e6},
                     {"detuning_max_Hz", 2e7}, {"n_photons_min", 1e4},
                     {"n_photons_max", 1e8}};
  const std::string good = "/tmp/cavitymech_cli_opt_good.json";
  write_file(good, cfg.dump());
  const RunResult feasible =
      run_cli("optimize --config " + good + " --format json");
  CHECK(feasible.exit_code == 0);
  const json report = json::parse(feasible.output);
  CHECK(report.at("feasible").get<bool>());
  CHECK(report.at("target") == "cooling");
  CHECK(report.at("settings").size() == 1);

  // Blue detunings at a drive strong enough that anti-damping beats the
  // mechanical linewidth across the whole box.
  cfg["optimize"]["detuning_min_Hz"] = -2e7;
  cfg["optimize"]["detuning_max_Hz"] = -1e6;
  cfg["optimize"]["n_photons_min"] = 1e9;
  cfg["optimize"]["n_photons_max"] = 1e10;
  const std::string bad = "/tmp/cavitymech_cli_opt_bad.json";
  write_file(bad, cfg.dump());
  const RunResult infeasible =
      run_cli("optimize --config " + bad + " --format json");
  CHECK(infeasible.exit_code == 2);
  CHECK_FALSE(json::parse(infeasible.output).at("feasible").get<bool>());
}

TEST_CASE("a one-point sweep agrees with the cool report exactly") {
  const RunResult sweep = run_cli("sweep --config " + single_config_path());
  REQUIRE(sweep.exit_code == 0);
  const std::vector<std::string> lines = lines_of(sweep.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines.front() == "n_photons,n_final");
  const std::size_t comma = lines[1].find(',');
  REQUIRE(comma != std::string::npos);
  const double swept = std::strtod(lines[1].c_str() + comma + 1, nullptr);

  const RunResult cool =
      run_cli("cool --config " + single_config_path() + " --format json");
  REQUIRE(cool.exit_code == 0);
  const double direct = json::parse(cool.output).at("n_final").get<double>();
  CHECK(swept == direct);  // same computation, bit for bit
}

TEST_CASE("multi-axis sweeps are row-major with the last axis fastest") {
  json cfg = json::parse(kSingleConfig);
  cfg["sweep"]["axes"] = {{{"key", "n_photons"},
                           {"min", 1e5},
                           {"max", 1e7},
                           {"n", 3},
                           {"spacing", "log"}},
                          {{"key", "T_bath_K"}, {"min", 0.05}, {"max", 0.15},
                           {"n", 2}}};
  const std::string path = "/tmp/cavitymech_cli_sweep2.json";
  write_file(path, cfg.dump());

  const RunResult t1 = run_cli("sweep --config " + path + " --threads 1");
  REQUIRE(t1.exit_code == 0);
  const std::vector<std::string> lines = lines_of(t1.output);
  REQUIRE(lines.size() == 7);
  CHECK(lines.front() == "n_photons,T_bath_K,n_final");
  std::vector<double> col0, col1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    col0.push_back(std::strtod(lines[i].c_str(), nullptr));
    const std::size_t comma = lines[i].find(',');
    col1.push_back(std::strtod(lines[i].c_str() + comma + 1, nullptr));
  }
  // Slow axis repeats in blocks of two, fast axis alternates.
  CHECK(col0[0] == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(col0[1] == doctest::Approx(1e5).epsilon(1e-12));
  CHECK(col0[2] == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(col0[4] == doctest::Approx(1e7).epsilon(1e-12));
  CHECK(col1[0] == doctest::Approx(0.05));
  CHECK(col1[1] == doctest::Approx(0.15));
  CHECK(col1[4] == doctest::Approx(0.05));

  const RunResult t4 = run_cli("sweep --config " + path + " --threads 4");
  CHECK(t4.exit_code == 0);
  CHECK(t1.output == t4.output);
}

TEST_CASE("--out writes the stdout bytes atomically") {
  const std::string out_path = "/tmp/cavitymech_cli_out.json";
  std::remove(out_path.c_str());
  const std::string base =
      "cool --config " + single_config_path() + " --format json";
  const RunResult direct = run_cli(base);
  REQUIRE(direct.exit_code == 0);

  const RunResult to_file = run_cli(base + " --out " + out_path);
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.output.empty());
  CHECK(read_file(out_path) == direct.output);
  CHECK_FALSE(file_exists(out_path + ".tmp"));
  std::remove(out_path.c_str());
}

TEST_CASE("config errors exit 1 and leave no output file behind") {
  const std::string bad_path = "/tmp/cavitymech_cli_bad.json";
  write_file(bad_path, "{ nope");
  const std::string never = "/tmp/cavitymech_cli_never.json";
  std::remove(never.c_str());

  const RunResult bad =
      run_cli("cool --config " + bad_path + " --out " + never);
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("error: config: invalid JSON") != std::string::npos);
  CHECK_FALSE(file_exists(never));
  CHECK_FALSE(file_exists(never + ".tmp"));

  const RunResult missing =
      run_cli("quantities --config /tmp/no_such_cavitymech.json");
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("cannot read file") != std::string::npos);

  const RunResult no_sub = run_cli("");
  CHECK(no_sub.exit_code == 1);
  CHECK_FALSE(no_sub.output.empty());

  const RunResult no_config = run_cli("cool");
  CHECK(no_config.exit_code == 1);

  const RunResult bad_format = run_cli("cool --config " +
                                       single_config_path() + " --format xml");
  CHECK(bad_format.exit_code == 1);
  CHECK(bad_format.output.find("format must be \"csv\" or \"json\"") !=
        std::string::npos);
}

TEST_CASE("the built-in cross-engine check passes") {
  const std::string path = "/tmp/cavitymech_cli_empty.json";
  write_file(path, "{}");
  const RunResult run = run_cli("oracle-check --config " + path);
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("all checks passed") != std::string::npos);
  CHECK(run.output.find("FAIL") == std::string::npos);
  CHECK(run.output.find("transfer_gaussian_vs_oracle") != std::string::npos);
}
