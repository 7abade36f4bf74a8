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

#ifndef JUMP_MPPI_CARTPOLE_H_
#define JUMP_MPPI_CARTPOLE_H_

#include "jump_mppi/dynamics.h"

namespace jump_mppi {

struct CartpoleParams {
  double cart_mass = 1.0;    // [kg]
  double pole_mass = 0.1;    // [kg]
  double pole_length = 0.5;  // pivot to point mass [m]
  double gravity = 9.81;     // [m/s^2]
};

// Frictionless cart-pole with a point-mass pole on a massless rod, driven by
// a horizontal force on the cart. State (x, x_dot, theta, theta_dot) with
// theta = 0 hanging down and theta = pi upright.
class CartpoleModel : public DynamicsModel {
 public:
  explicit CartpoleModel(const CartpoleParams& params = {});

  int state_dim() const override { return 4; }
  int control_dim() const override { return 1; }
  void Affine(const Eigen::Ref<const Vector>& x, double t,
              Eigen::Ref<Vector> drift,
              Eigen::Ref<Matrix> control) const override;
  std::vector<std::string> state_names() const override;
  std::vector<std::string> control_names() const override;

  const CartpoleParams& params() const { return params_; }

  // Kinetic plus potential energy, potential zero at the pivot height.
  double Energy(const Vector& x) const;

 private:
  CartpoleParams params_;
};

}  // namespace jump_mppi

#endif  // JUMP_MPPI_CARTPOLE_H_
