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

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cavitymech/commands.hpp"
#include "cavitymech/records.hpp"

namespace cmds = cavitymech::commands;

int main(int argc, char** argv) {
  CLI::App app{"cavity opto- and electromechanics toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format_name;
  int seed = 0;
  int threads = 1;

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"quantities", "print every figure of merit of the configured system"},
      {"cool", "closed-form and steady-state sideband cooling report"},
      {"spectrum", "thermal displacement spectral density over a frequency grid"},
      {"transfer", "simulate the microwave-optical state transfer protocol"},
      {"design", "beam eigenfrequency and quantum-enabled screening report"},
      {"optimize", "search drive settings for the configured target"},
      {"sweep", "tabulate a metric over one to three parameter axes"},
      {"oracle-check", "run the built-in cross-engine comparison suite"},
  };
  for (const auto& [name, desc] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "run configuration file (JSON)")
        ->required();
    sub->add_option("--out", out_path,
                    "write the artifact to this path (default: stdout)");
    sub->add_option("--format", format_name, "output format: csv or json");
    sub->add_option("--seed", seed,
                    "accepted for interface stability; every computation here "
                    "is deterministic");
    sub->add_option("--threads", threads, "worker threads for sweep points");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const cavitymech::ParsedConfig cfg =
        cavitymech::parse_config_file(config_path);
    cmds::Format format;
    if (!format_name.empty())
      format = cmds::parse_format(format_name);
    else
      format = (cmd == "spectrum" || cmd == "sweep") ? cmds::Format::csv
                                                     : cmds::Format::json;

    cmds::Artifact artifact;
    if (cmd == "quantities")
      artifact = cmds::run_quantities(cfg, format);
    else if (cmd == "cool")
      artifact = cmds::run_cool(cfg, format);
    else if (cmd == "spectrum")
      artifact = cmds::run_spectrum(cfg, format);
    else if (cmd == "transfer")
      artifact = cmds::run_transfer(cfg, format);
    else if (cmd == "design")
      artifact = cmds::run_design(cfg, format);
    else if (cmd == "optimize")
      artifact = cmds::run_optimize(cfg, format, threads);
    else if (cmd == "sweep")
      artifact = cmds::run_sweep(cfg, format, threads);
    else
      artifact = cmds::run_oracle_check(cfg, format);

    if (out_path.empty())
      std::cout << artifact.text;
    else
      cmds::write_atomic(out_path, artifact.text);
    return artifact.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
