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

#ifndef JUMP_MPPI_DYNAMICS_H_
#define JUMP_MPPI_DYNAMICS_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "jump_mppi/types.h"

namespace jump_mppi {

struct CostModel;

struct ControlLimits {
  Vector lower;
  Vector upper;
};

// Control-affine jump diffusion
//
//   dx = (f(x,t) + G(x,t) u) dt + B(x,t) dw + H(x,t) dP
//
// with B and H taking m-dimensional noise, so diffusion and jump noise
// share the control dimension.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;

  // Writes f(x,t) into `drift` (n) and G(x,t) into `control` (n x m).
  virtual void Affine(const Eigen::Ref<const Vector>& x, double t,
                      Eigen::Ref<Vector> drift,
                      Eigen::Ref<Matrix> control) const = 0;

  // Writes B(x,t) and H(x,t). The default copies G: noise enters through
  // the control channels.
  virtual void NoiseMatrices(const Eigen::Ref<const Vector>& x, double t,
                             Eigen::Ref<Matrix> diffusion,
                             Eigen::Ref<Matrix> jump) const;

  // True when B == H == G for every state, which lets Step fold the noise
  // into the control input.
  virtual bool noise_through_controls() const { return true; }

  virtual std::vector<std::string> state_names() const;
  virtual std::vector<std::string> control_names() const;

  Vector Drift(const Vector& x, double t = 0.0) const;
  Matrix ControlMatrix(const Vector& x, double t = 0.0) const;
  Matrix DiffusionMatrix(const Vector& x, double t = 0.0) const;
  Matrix JumpMatrix(const Vector& x, double t = 0.0) const;

  const std::optional<ControlLimits>& control_limits() const {
    return limits_;
  }
  void set_control_limits(std::optional<ControlLimits> limits);

  // Clamps `u` in place to the control limits, if any.
  void Clamp(Eigen::Ref<Vector> u) const;

 private:
  std::optional<ControlLimits> limits_;
};

// Scratch buffers for repeated stepping without allocation.
struct StepWorkspace {
  Vector drift;
  Matrix control;
  Matrix diffusion;
  Matrix jump;
  Vector u;
  Vector input;

  void Resize(int state_dim, int control_dim);
};

// One Euler step
//
//   x + (f + G u) dt + B eps_d sqrt(dt) + [has_jump] H eps_j sqrt(dt)
//
// with u clamped to the model's limits. Returns false (and leaves a
// non-finite `x_next`) when the result is not finite.
bool StepInto(const DynamicsModel& model, const Eigen::Ref<const Vector>& x,
              const Eigen::Ref<const Vector>& u,
              const Eigen::Ref<const Vector>& eps_d,
              const Eigen::Ref<const Vector>& eps_j, bool has_jump, double dt,
              double t, StepWorkspace& ws, Eigen::Ref<Vector> x_next);

// Allocating form of StepInto. Throws DivergenceError(step_index) on a
// non-finite result.
Vector Step(const DynamicsModel& model, const Vector& x, const Vector& u,
            const Vector& eps_d, const Vector& eps_j, bool has_jump,
            double dt, double t = 0.0, int step_index = 0);

// Propagates N steps from x0 under `controls` and `noise`, accumulating the
// importance-sampling modified cost. Never throws on divergence: the cost
// becomes +inf and diverged_step records where it happened.
RolloutResult Rollout(const DynamicsModel& model, const Vector& x0,
                      const ControlSequence& controls,
                      const NoiseRealization& noise,
                      const CostModel& cost_model, double t0 = 0.0);

// In-place form used by the controller; reads result.noise and overwrites
// result.trajectory and result.cost.
void RolloutInPlace(const DynamicsModel& model,
                    const Eigen::Ref<const Vector>& x0,
                    const ControlSequence& controls,
                    const CostModel& cost_model, double t0,
                    StepWorkspace& ws, RolloutResult& result);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_DYNAMICS_H_
