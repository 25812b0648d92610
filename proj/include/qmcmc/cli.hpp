// Copyright 2026 The QMCMC Authors
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

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmcmc/experiments.hpp"
#include "qmcmc/results_io.hpp"

namespace qmcmc {

enum class Command { Thermalize, Sample, Experiment, Validate };

/// A parsed command line. `values` holds every physics/output key after
/// merging the config file (if any) with flags; flags win.
struct RunConfig {
  Command command = Command::Thermalize;
  std::optional<ExperimentKind> experiment;
  std::string config_path;
  std::map<std::string, std::string> values;
  OutputFormat format = OutputFormat::Csv;
  std::string out;       // empty: stdout
  int verbosity = 1;     // 0 quiet, 1 default, 2 verbose
  int workers = 0;       // 0: QMCMC_WORKERS or hardware concurrency
  bool timing = false;
};

/// Parses argv (without the program name). Throws UsageError or UnknownKey;
/// returns std::nullopt when help was requested (after printing it to `help_out`).
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& help_out);

/// Reads a `key = value` config file (`#` comments). Throws IoError,
/// UsageError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Executes a parsed configuration. Throws library errors.
void execute(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Full CLI entry point: parse, execute, map errors to exit codes
/// (0 success, 1 runtime or IO failure, 2 usage or configuration error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmcmc
