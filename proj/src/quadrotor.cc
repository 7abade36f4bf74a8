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

#include "jump_mppi/quadrotor.h"

#include <cmath>

namespace jump_mppi {

QuadrotorModel::QuadrotorModel(const QuadrotorParams& params)
    : params_(params) {
  if (!(params.mass > 0.0) || !(params.arm_length > 0.0) ||
      !(params.gravity > 0.0) || !(params.inertia.array() > 0.0).all()) {
    throw ConfigError("quadrotor parameters must be positive");
  }
}

void QuadrotorModel::Affine(const Eigen::Ref<const Vector>& x, double,
                            Eigen::Ref<Vector> drift,
                            Eigen::Ref<Matrix> control) const {
  const double roll = x(6);
  const double pitch = x(7);
  const double yaw = x(8);
  const double p = x(9);
  const double q = x(10);
  const double r = x(11);
  const double sr = std::sin(roll), cr = std::cos(roll);
  const double sp = std::sin(pitch), cp = std::cos(pitch);
  const double sy = std::sin(yaw), cy = std::cos(yaw);
  const double tp = sp / cp;
  const Eigen::Vector3d& inertia = params_.inertia;

  drift.setZero();
  control.setZero();

  // Position kinematics.
  drift(0) = x(3);
  drift(1) = x(4);
  drift(2) = x(5);

  // Translational: gravity in the drift, thrust along body z.
  drift(5) = -params_.gravity;
  const double inv_m = 1.0 / params_.mass;
  control(3, 0) = (cy * sp * cr + sy * sr) * inv_m;
  control(4, 0) = (sy * sp * cr - cy * sr) * inv_m;
  control(5, 0) = (cp * cr) * inv_m;

  // Euler angle rates from body rates.
  drift(6) = p + (sr * q + cr * r) * tp;
  drift(7) = cr * q - sr * r;
  drift(8) = (sr * q + cr * r) / cp;

  // Euler's rigid-body equations, diagonal inertia.
  drift(9) = (inertia(1) - inertia(2)) * q * r / inertia(0);
  drift(10) = (inertia(2) - inertia(0)) * p * r / inertia(1);
  drift(11) = (inertia(0) - inertia(1)) * p * q / inertia(2);
  control(9, 1) = 1.0 / inertia(0);
  control(10, 2) = 1.0 / inertia(1);
  control(11, 3) = 1.0 / inertia(2);
}

std::vector<std::string> QuadrotorModel::state_names() const {
  return {"px", "py", "pz", "vx", "vy", "vz",
          "roll", "pitch", "yaw", "wx", "wy", "wz"};
}

std::vector<std::string> QuadrotorModel::control_names() const {
  return {"thrust", "tau_x", "tau_y", "tau_z"};
}

}  // namespace jump_mppi
