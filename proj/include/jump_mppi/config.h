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

#ifndef JUMP_MPPI_CONFIG_H_
#define JUMP_MPPI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jump_mppi/tasks.h"
#include "jump_mppi/types.h"

namespace jump_mppi {

// Experiment description read from a `key = value` config file.
//
// Values are numbers, booleans, quoted or bare strings, and bracketed lists
// (nested for matrices). `#` starts a comment. Unknown keys are errors.
// Covariance entries accept a scalar variance (expanded to value * I), a
// flat list (diagonal variances) or a nested list (full matrix).
// Jump covariances are sigma_j * sigma_j_shape for each swept sigma_j.
struct ExperimentConfig {
  std::string task = "cartpole";

  // Physical parameters; unset entries keep the model defaults.
  std::optional<double> cart_mass, pole_mass, pole_length;
  std::optional<double> mass, arm_length, gravity;
  std::optional<std::vector<double>> inertia;

  // Cost and task shape; unset entries keep the task defaults.
  std::optional<std::vector<double>> cost_weights;
  std::optional<double> terminal_scale;
  std::optional<std::vector<double>> initial_state;  // cartpole
  std::optional<std::vector<double>> initial_position;  // quadrotor
  std::optional<std::vector<double>> target;            // quadrotor
  std::optional<double> duration;
  bool plant_noise = true;
  std::optional<double> success_angle_band, success_cart_bound,
      success_settle_time, success_goal_radius, success_max_tilt_deg;

  // Controller.
  std::optional<double> lambda, c, dt;
  std::optional<int> horizon_n;
  std::optional<Matrix> sigma_d;
  std::optional<Matrix> sigma_j_shape;
  std::optional<std::vector<double>> u_init;
  std::optional<std::vector<double>> control_min, control_max;

  // Sweep: explicit (nu, sigma_j) cells, else the nu x sigma_j grid; every
  // cell is crossed with samples_m.
  std::vector<double> nu = {0.25};
  std::vector<double> sigma_j = {1.0};
  std::vector<std::pair<double, double>> cells;
  std::vector<int> samples_m = {1000};

  int trials = 20;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  std::string variant = "both";  // old | new | both
  bool record_timing = true;
  int bench_iterations = 200;
};

// Per-task controller defaults applied when a key is absent.
struct ControllerDefaults {
  double lambda;
  double c;
  double dt;
  int horizon_n;
  Matrix sigma_d;
  Matrix sigma_j_shape;
};
ControllerDefaults DefaultsFor(TaskKind kind);

// Throws ConfigError with the line number on syntax errors and naming the
// key for unknown keys or bad values.
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);

// Checks cross-field invariants (task name, non-empty sweeps, ...).
void CheckExperimentConfig(const ExperimentConfig& config);

TaskKind ParseTaskKind(const std::string& name);
TaskSpec BuildTask(const ExperimentConfig& config);

struct SweepCell {
  double nu;
  double sigma_j;
  int samples_m;
};
std::vector<SweepCell> SweepCells(const ExperimentConfig& config);

// Controller config for one sweep cell; `jump_sampling` selects new (true)
// or old (false) MPPI. The result is validated.
MppiConfig BuildMppiConfig(const ExperimentConfig& config,
                           const TaskSpec& task, const SweepCell& cell,
                           bool jump_sampling);

// Variant names selected by config.variant, in output order.
std::vector<std::string> SelectedVariants(const ExperimentConfig& config);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_CONFIG_H_
