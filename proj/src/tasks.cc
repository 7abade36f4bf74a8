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

#include "jump_mppi/tasks.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jump_mppi {
namespace {

void CheckWeights(const std::vector<double>& weights) {
  if (weights.size() != 4) {
    throw ConfigError("cost weights must have 4 entries");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("cost weights must be nonnegative");
    }
  }
}

}  // namespace

double WrapAngle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
  return wrapped;
}

TaskSpec MakeCartpoleTask(const CartpoleTaskOptions& options) {
  CheckWeights(options.weights);
  if (options.initial_state.size() != 4) {
    throw ConfigError("cartpole initial state must have 4 entries");
  }
  if (!(options.duration > 0.0)) throw ConfigError("duration must be positive");
  TaskSpec task;
  task.kind = TaskKind::kCartpole;
  task.name = "cartpole";
  task.model = std::make_shared<CartpoleModel>(options.params);
  const double w0 = options.weights[0], w1 = options.weights[1],
               w2 = options.weights[2], w3 = options.weights[3];
  task.state_cost = [=](const Eigen::Ref<const Vector>& x, double) {
    const double up = 1.0 + std::cos(x(2));
    return w0 * x(0) * x(0) + w1 * x(1) * x(1) + w2 * up * up +
           w3 * x(3) * x(3);
  };
  const double scale = options.terminal_scale;
  StateCostFn running = task.state_cost;
  task.terminal_cost = [=](const Eigen::Ref<const Vector>& x) {
    return scale * running(x, 0.0);
  };
  task.initial_state = options.initial_state;
  task.target = (Vector(4) << 0.0, 0.0, std::numbers::pi, 0.0).finished();
  task.u_init = Vector::Zero(1);
  task.duration = options.duration;
  return task;
}

TaskSpec MakeQuadrotorTask(const QuadrotorTaskOptions& options) {
  CheckWeights(options.weights);
  if (options.target.size() != 3 || options.initial_position.size() != 3) {
    throw ConfigError("quadrotor positions must have 3 entries");
  }
  if (!(options.duration > 0.0)) throw ConfigError("duration must be positive");
  TaskSpec task;
  task.kind = TaskKind::kQuadrotor;
  task.name = "quadrotor";
  auto model = std::make_shared<QuadrotorModel>(options.params);
  task.u_init = Vector::Zero(4);
  task.u_init(0) = model->hover_thrust();
  task.model = model;
  const double wp = options.weights[0], wv = options.weights[1],
               wa = options.weights[2], ww = options.weights[3];
  const Eigen::Vector3d target = options.target;
  task.state_cost = [=](const Eigen::Ref<const Vector>& x, double) {
    const double dx = x(0) - target(0);
    const double dy = x(1) - target(1);
    const double dz = x(2) - target(2);
    return wp * (dx * dx + dy * dy + dz * dz) +
           wv * (x(3) * x(3) + x(4) * x(4) + x(5) * x(5)) +
           wa * (x(6) * x(6) + x(7) * x(7)) +
           ww * (x(9) * x(9) + x(10) * x(10) + x(11) * x(11));
  };
  const double scale = options.terminal_scale;
  StateCostFn running = task.state_cost;
  task.terminal_cost = [=](const Eigen::Ref<const Vector>& x) {
    return scale * running(x, 0.0);
  };
  task.initial_state = Vector::Zero(12);
  task.initial_state.head<3>() = options.initial_position;
  task.target = options.target;
  task.duration = options.duration;
  return task;
}

CostModel MakeCostModel(const TaskSpec& task, const MppiConfig& config) {
  ImportanceTerms terms = ImportanceTermsFromDynamics(
      *task.model, task.initial_state, 0.0, config.sigma_d);
  CostModel cost;
  cost.state_cost = task.state_cost;
  cost.terminal_cost = task.terminal_cost;
  cost.control_cost = config.lambda * terms.control_metric;
  cost.lambda = config.lambda;
  cost.c = config.c;
  cost.importance_map = terms.importance_map;
  cost.noise_quadratic = terms.noise_quadratic;
  return cost;
}

bool SuccessPredicate(const TaskSpec& task, const RowMatrix& states,
                      double dt) {
  const int rows = static_cast<int>(states.rows());
  if (rows == 0 || !states.allFinite()) return false;
  const SuccessCriteria& rule = task.success;
  if (task.kind == TaskKind::kCartpole) {
    const int window = std::min(
        rows, static_cast<int>(std::lround(rule.settle_time / dt)) + 1);
    for (int k = rows - window; k < rows; ++k) {
      if (std::abs(WrapAngle(states(k, 2) - std::numbers::pi)) >=
              rule.angle_band ||
          std::abs(states(k, 0)) >= rule.cart_bound) {
        return false;
      }
    }
    return true;
  }
  for (int k = 0; k < rows; ++k) {
    if (states(k, 2) <= 0.0) return false;  // crash
    if (std::abs(states(k, 6)) >= rule.max_tilt ||
        std::abs(states(k, 7)) >= rule.max_tilt) {
      return false;
    }
  }
  Eigen::Vector3d final_position = states.row(rows - 1).head<3>().transpose();
  return (final_position - task.target.head<3>()).norm() < rule.goal_radius;
}

}  // namespace jump_mppi
