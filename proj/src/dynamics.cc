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

#include "jump_mppi/dynamics.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "jump_mppi/cost.h"

namespace jump_mppi {

void DynamicsModel::NoiseMatrices(const Eigen::Ref<const Vector>& x, double t,
                                  Eigen::Ref<Matrix> diffusion,
                                  Eigen::Ref<Matrix> jump) const {
  Vector drift(state_dim());
  Affine(x, t, drift, diffusion);
  jump = diffusion;
}

std::vector<std::string> DynamicsModel::state_names() const {
  std::vector<std::string> names;
  for (int i = 0; i < state_dim(); ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::vector<std::string> DynamicsModel::control_names() const {
  std::vector<std::string> names;
  for (int i = 0; i < control_dim(); ++i) {
    names.push_back("u" + std::to_string(i));
  }
  return names;
}

Vector DynamicsModel::Drift(const Vector& x, double t) const {
  Vector f(state_dim());
  Matrix g(state_dim(), control_dim());
  Affine(x, t, f, g);
  return f;
}

Matrix DynamicsModel::ControlMatrix(const Vector& x, double t) const {
  Vector f(state_dim());
  Matrix g(state_dim(), control_dim());
  Affine(x, t, f, g);
  return g;
}

Matrix DynamicsModel::DiffusionMatrix(const Vector& x, double t) const {
  Matrix b(state_dim(), control_dim());
  Matrix h(state_dim(), control_dim());
  NoiseMatrices(x, t, b, h);
  return b;
}

Matrix DynamicsModel::JumpMatrix(const Vector& x, double t) const {
  Matrix b(state_dim(), control_dim());
  Matrix h(state_dim(), control_dim());
  NoiseMatrices(x, t, b, h);
  return h;
}

void DynamicsModel::set_control_limits(std::optional<ControlLimits> limits) {
  if (limits) {
    if (limits->lower.size() != control_dim() ||
        limits->upper.size() != control_dim()) {
      throw std::invalid_argument("control limit dimension mismatch");
    }
    if ((limits->lower.array() > limits->upper.array()).any()) {
      throw std::invalid_argument("control lower limit exceeds upper limit");
    }
  }
  limits_ = std::move(limits);
}

void DynamicsModel::Clamp(Eigen::Ref<Vector> u) const {
  if (!limits_) return;
  u = u.cwiseMax(limits_->lower).cwiseMin(limits_->upper);
}

void StepWorkspace::Resize(int state_dim, int control_dim) {
  drift.resize(state_dim);
  control.resize(state_dim, control_dim);
  diffusion.resize(state_dim, control_dim);
  jump.resize(state_dim, control_dim);
  u.resize(control_dim);
  input.resize(control_dim);
}

bool StepInto(const DynamicsModel& model, const Eigen::Ref<const Vector>& x,
              const Eigen::Ref<const Vector>& u,
              const Eigen::Ref<const Vector>& eps_d,
              const Eigen::Ref<const Vector>& eps_j, bool has_jump, double dt,
              double t, StepWorkspace& ws, Eigen::Ref<Vector> x_next) {
  const int n = model.state_dim();
  const int m = model.control_dim();
  if (ws.drift.size() != n || ws.u.size() != m) ws.Resize(n, m);
  ws.u = u;
  model.Clamp(ws.u);
  model.Affine(x, t, ws.drift, ws.control);
  const double sqrt_dt = std::sqrt(dt);
  if (model.noise_through_controls()) {
    // B = H = G: fold all inputs into one control-space vector. Plain loops
    // because these are tiny and sit in the rollout inner loop.
    for (int k = 0; k < m; ++k) {
      double in = ws.u(k) * dt + eps_d(k) * sqrt_dt;
      if (has_jump) in += eps_j(k) * sqrt_dt;
      ws.input(k) = in;
    }
    bool finite = true;
    for (int i = 0; i < n; ++i) {
      double next = x(i) + ws.drift(i) * dt;
      for (int k = 0; k < m; ++k) next += ws.control(i, k) * ws.input(k);
      x_next(i) = next;
      finite = finite && std::isfinite(next);
    }
    return finite;
  } else {
    model.NoiseMatrices(x, t, ws.diffusion, ws.jump);
    x_next = x + ws.drift * dt;
    x_next.noalias() += ws.control * (ws.u * dt);
    x_next.noalias() += ws.diffusion * (eps_d * sqrt_dt);
    if (has_jump) x_next.noalias() += ws.jump * (eps_j * sqrt_dt);
  }
  return x_next.allFinite();
}

Vector Step(const DynamicsModel& model, const Vector& x, const Vector& u,
            const Vector& eps_d, const Vector& eps_j, bool has_jump, double dt,
            double t, int step_index) {
  if (x.size() != model.state_dim() || u.size() != model.control_dim() ||
      eps_d.size() != model.control_dim() ||
      eps_j.size() != model.control_dim()) {
    throw std::invalid_argument("step dimension mismatch");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  StepWorkspace ws;
  Vector next(model.state_dim());
  if (!StepInto(model, x, u, eps_d, eps_j, has_jump, dt, t, ws, next)) {
    throw DivergenceError(step_index);
  }
  return next;
}

void RolloutInPlace(const DynamicsModel& model,
                    const Eigen::Ref<const Vector>& x0,
                    const ControlSequence& controls,
                    const CostModel& cost_model, double t0,
                    StepWorkspace& ws, RolloutResult& result) {
  const int n = model.state_dim();
  const int n_steps = controls.length();
  const double dt = controls.dt;
  const NoiseRealization& noise = result.noise;
  if (noise.length() != n_steps) {
    throw std::invalid_argument("controls and noise lengths differ");
  }
  RowMatrix& states = result.trajectory.states;
  if (states.rows() != n_steps + 1 || states.cols() != n) {
    states.resize(n_steps + 1, n);
  }
  result.trajectory.dt = dt;
  result.diverged_step = -1;
  states.row(0) = x0.transpose();
  double total = 0.0;
  Vector x = x0;
  Vector next(n);
  for (int j = 0; j < n_steps; ++j) {
    const double t = t0 + j * dt;
    bool ok = StepInto(model, x, controls.controls.row(j).transpose(),
                       noise.eps_d.row(j).transpose(),
                       noise.eps_j.row(j).transpose(),
                       noise.jump_indicator[j] != 0, dt, t, ws, next);
    // ws.u now holds the clamped control that was applied.
    double q = cost_model.state_cost(x, t);
    total += ModifiedRunningCost(q, ws.u, noise.eps_combined.row(j).transpose(),
                                 cost_model.control_cost, cost_model.lambda,
                                 cost_model.c, cost_model.importance_map,
                                 cost_model.noise_quadratic, dt) *
             dt;
    if (!ok || !std::isfinite(total)) {
      result.diverged_step = j;
      states.bottomRows(n_steps - j).setConstant(
          std::numeric_limits<double>::quiet_NaN());
      result.cost = std::numeric_limits<double>::infinity();
      return;
    }
    states.row(j + 1) = next.transpose();
    x.swap(next);
  }
  total += cost_model.terminal_cost(x);
  result.cost =
      std::isfinite(total) ? total : std::numeric_limits<double>::infinity();
}

RolloutResult Rollout(const DynamicsModel& model, const Vector& x0,
                      const ControlSequence& controls,
                      const NoiseRealization& noise,
                      const CostModel& cost_model, double t0) {
  RolloutResult result;
  result.noise = noise;
  StepWorkspace ws;
  RolloutInPlace(model, x0, controls, cost_model, t0, ws, result);
  return result;
}

}  // namespace jump_mppi
