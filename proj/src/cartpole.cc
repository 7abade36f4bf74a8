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

#include "jump_mppi/cartpole.h"

#include <cmath>

namespace jump_mppi {

CartpoleModel::CartpoleModel(const CartpoleParams& params) : params_(params) {
  if (!(params.cart_mass > 0.0) || !(params.pole_mass > 0.0) ||
      !(params.pole_length > 0.0) || !(params.gravity > 0.0)) {
    throw ConfigError("cartpole parameters must be positive");
  }
}

void CartpoleModel::Affine(const Eigen::Ref<const Vector>& x, double,
                           Eigen::Ref<Vector> drift,
                           Eigen::Ref<Matrix> control) const {
  const double mc = params_.cart_mass;
  const double mp = params_.pole_mass;
  const double l = params_.pole_length;
  const double g = params_.gravity;
  const double theta = x(2);
  const double theta_dot = x(3);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double denom = mc + mp * s * s;

  drift(0) = x(1);
  drift(1) = mp * s * (l * theta_dot * theta_dot + g * c) / denom;
  drift(2) = theta_dot;
  drift(3) = (-mp * l * theta_dot * theta_dot * c * s - (mc + mp) * g * s) /
             (l * denom);

  control(0, 0) = 0.0;
  control(1, 0) = 1.0 / denom;
  control(2, 0) = 0.0;
  control(3, 0) = -c / (l * denom);
}

std::vector<std::string> CartpoleModel::state_names() const {
  return {"x", "x_dot", "theta", "theta_dot"};
}

std::vector<std::string> CartpoleModel::control_names() const {
  return {"force"};
}

double CartpoleModel::Energy(const Vector& x) const {
  const double mc = params_.cart_mass;
  const double mp = params_.pole_mass;
  const double l = params_.pole_length;
  const double xd = x(1);
  const double th = x(2);
  const double thd = x(3);
  // Pole mass position: (x + l sin th, -l cos th).
  const double vx = xd + l * thd * std::cos(th);
  const double vy = l * thd * std::sin(th);
  const double kinetic = 0.5 * mc * xd * xd + 0.5 * mp * (vx * vx + vy * vy);
  const double potential = -mp * params_.gravity * l * std::cos(th);
  return kinetic + potential;
}

}  // namespace jump_mppi
