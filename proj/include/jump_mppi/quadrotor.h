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

#ifndef JUMP_MPPI_QUADROTOR_H_
#define JUMP_MPPI_QUADROTOR_H_

#include <Eigen/Core>

#include "jump_mppi/dynamics.h"

namespace jump_mppi {

struct QuadrotorParams {
  double mass = 1.0;                                   // [kg]
  double arm_length = 0.2;                             // [m]
  Eigen::Vector3d inertia = {0.01, 0.01, 0.02};        // diagonal [kg m^2]
  double gravity = 9.81;                               // [m/s^2]
};

// Rigid-body quadrotor with ZYX Euler angles.
//
// State: position (3), world velocity (3), roll/pitch/yaw (3), body rates
// (3). Controls: total thrust along body z, then body torques (3).
class QuadrotorModel : public DynamicsModel {
 public:
  explicit QuadrotorModel(const QuadrotorParams& params = {});

  int state_dim() const override { return 12; }
  int control_dim() const override { return 4; }
  void Affine(const Eigen::Ref<const Vector>& x, double t,
              Eigen::Ref<Vector> drift,
              Eigen::Ref<Matrix> control) const override;
  std::vector<std::string> state_names() const override;
  std::vector<std::string> control_names() const override;

  const QuadrotorParams& params() const { return params_; }
  double hover_thrust() const { return params_.mass * params_.gravity; }

 private:
  QuadrotorParams params_;
};

}  // namespace jump_mppi

#endif  // JUMP_MPPI_QUADROTOR_H_
