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

#ifndef JUMP_MPPI_TASKS_H_
#define JUMP_MPPI_TASKS_H_

#include <memory>
#include <string>
#include <vector>

#include "jump_mppi/cartpole.h"
#include "jump_mppi/cost.h"
#include "jump_mppi/quadrotor.h"
#include "jump_mppi/types.h"

namespace jump_mppi {

enum class TaskKind { kCartpole, kQuadrotor };

// Success thresholds of the closed-loop tasks.
struct SuccessCriteria {
  // Cartpole: pole within angle_band of upright and |x| below cart_bound for
  // the final settle_time seconds.
  double angle_band = 0.2;
  double cart_bound = 5.0;
  double settle_time = 2.0;
  // Quadrotor: final distance to target below goal_radius, z > 0 and
  // |roll|, |pitch| below max_tilt for the whole run.
  double goal_radius = 0.5;
  double max_tilt = 80.0 * 3.14159265358979323846 / 180.0;
};

// A closed-loop experiment: plant model, state cost, start state, duration.
struct TaskSpec {
  TaskKind kind = TaskKind::kCartpole;
  std::string name;
  std::shared_ptr<const DynamicsModel> model;
  StateCostFn state_cost;
  TerminalCostFn terminal_cost;
  Vector initial_state;
  Vector target;  // upright state or target position
  Vector u_init;
  double duration = 10.0;  // [s]
  bool plant_noise = true;
  SuccessCriteria success;
};

struct CartpoleTaskOptions {
  CartpoleParams params;
  // Weights on x^2, x_dot^2, (1 + cos theta)^2, theta_dot^2.
  std::vector<double> weights = {2.5, 1.0, 50.0, 1.0};
  double terminal_scale = 10.0;
  Vector initial_state = Vector::Zero(4);  // hanging down at rest
  double duration = 10.0;
};

struct QuadrotorTaskOptions {
  QuadrotorParams params;
  // Weights on |p - p*|^2, |v|^2, roll^2 + pitch^2, |omega|^2.
  std::vector<double> weights = {4.0, 1.0, 10.0, 1.0};
  double terminal_scale = 10.0;
  Vector target = (Vector(3) << 4.0, 4.0, 2.0).finished();
  Vector initial_position = (Vector(3) << 0.0, 0.0, 1.0).finished();
  double duration = 8.0;
};

TaskSpec MakeCartpoleTask(const CartpoleTaskOptions& options = {});
TaskSpec MakeQuadrotorTask(const QuadrotorTaskOptions& options = {});

// Cost model for `task` under `config`: the task's state and terminal cost
// with R = lambda G~ and importance terms for noise covariance sigma_d.
// For control-channel noise these are lambda sigma_d^-1 and sigma_d^-1.
CostModel MakeCostModel(const TaskSpec& task, const MppiConfig& config);

// Wraps an angle to (-pi, pi].
double WrapAngle(double angle);

// Evaluates the task's success rule on a state history sampled every dt.
bool SuccessPredicate(const TaskSpec& task, const RowMatrix& states,
                      double dt);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_TASKS_H_
