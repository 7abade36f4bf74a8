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

// Command-line entry point:
//   jump-mppi <run|single|validate|bench> --config PATH [--trials K]
//             [--seed S] [--out DIR] [--variant old|new|both]

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "jump_mppi/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"MPPI control under jump-diffusion noise"};
  app.require_subcommand(1, 1);

  std::string config_path;
  jump_mppi::CommandOverrides overrides;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string variant;

  for (const char* name : {"run", "single", "validate", "bench"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Config file")->required();
    sub->add_option("--trials", trials, "Trials per cell")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Base seed");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--variant", variant, "Controller variant")
        ->check(CLI::IsMember({"old", "new", "both"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : jump_mppi::kExitConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--trials")) overrides.trials = trials;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--out")) overrides.output_dir = out_dir;
  if (sub->count("--variant")) overrides.variant = variant;
  return jump_mppi::RunCommand(sub->get_name(), config_path, overrides,
                               std::cout, std::cerr);
}
