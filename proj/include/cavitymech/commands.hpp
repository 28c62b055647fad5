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

#pragma once

#include <string>

#include "cavitymech/records.hpp"

namespace cavitymech::commands {

enum class Format { csv, json };

Format parse_format(const std::string& name);

// Output of one command: the full artifact body plus the process exit code.
// Exit 0 means success, 2 means the run completed but the answer is
// infeasible or unstable. Hard errors are thrown instead.
struct Artifact {
  std::string text;
  int exit_code = 0;
};

Artifact run_quantities(const ParsedConfig& cfg, Format format);
Artifact run_cool(const ParsedConfig& cfg, Format format);
Artifact run_spectrum(const ParsedConfig& cfg, Format format);
Artifact run_transfer(const ParsedConfig& cfg, Format format);
Artifact run_design(const ParsedConfig& cfg, Format format);
Artifact run_optimize(const ParsedConfig& cfg, Format format, int threads);
Artifact run_sweep(const ParsedConfig& cfg, Format format, int threads);
Artifact run_oracle_check(const ParsedConfig& cfg, Format format);

// Writes text to path atomically (temp file in the same directory, then
// rename). Throws NumericalError on I/O failure; no partial file remains.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace cavitymech::commands
