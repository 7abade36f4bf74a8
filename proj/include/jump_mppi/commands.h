// Copyright 2026 The Jump-MPPI Authors
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

#ifndef JUMP_MPPI_COMMANDS_H_
#define JUMP_MPPI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "jump_mppi/config.h"

namespace jump_mppi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

// Command-line overrides applied on top of the config file.
struct CommandOverrides {
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<std::string> variant;
};

void ApplyOverrides(const CommandOverrides& overrides, ExperimentConfig& config);

// Each command writes progress to `log` and returns an exit code. Config
// problems surface as ConfigError, everything else as std::exception.
//
// run:      every sweep cell and variant; summary.csv plus one trajectory
//           CSV per cell and variant in the output directory.
// single:   one trial of the first cell per variant with per-step
//           diagnostics (single_<variant>.csv).
// validate: builds every controller config and runs self-checks; no files.
// bench:    times bench_iterations controller iterations of the first cell
//           (new variant) and writes bench.csv.
int RunSweepCommand(const ExperimentConfig& config, std::ostream& log);
int SingleCommand(const ExperimentConfig& config, std::ostream& log);
int ValidateCommand(const ExperimentConfig& config, std::ostream& log);
int BenchCommand(const ExperimentConfig& config, std::ostream& log);

// Loads the config, applies overrides and dispatches, mapping exceptions to
// exit codes (1 config error, 2 runtime error).
int RunCommand(const std::string& command, const std::string& config_path,
               const CommandOverrides& overrides, std::ostream& log,
               std::ostream& err);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_COMMANDS_H_
