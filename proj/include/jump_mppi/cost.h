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

#ifndef JUMP_MPPI_COST_H_
#define JUMP_MPPI_COST_H_

#include <functional>

#include <Eigen/Core>

#include "jump_mppi/dynamics.h"
#include "jump_mppi/types.h"

namespace jump_mppi {

using StateCostFn =
    std::function<double(const Eigen::Ref<const Vector>& x, double t)>;
using TerminalCostFn = std::function<double(const Eigen::Ref<const Vector>& x)>;

// Running cost q(x,t) + 1/2 u'Ru, terminal cost phi(x_N), and the
// importance-sampling terms that turn it into the modified cost q~.
struct CostModel {
  StateCostFn state_cost;
  TerminalCostFn terminal_cost;
  Matrix control_cost;      // R, m x m symmetric PSD
  double lambda = 1.0;
  double c = 1.0;
  Matrix importance_map;    // G' Sigma^-1 B, m x m
  Matrix noise_quadratic;   // B' Sigma^-1 B, m x m

  // R = lambda I and identity importance terms; the control-channel case
  // with unit noise covariance.
  static CostModel ControlChannel(StateCostFn state_cost,
                                  TerminalCostFn terminal_cost, int m,
                                  double lambda, double c);
};

// Girsanov matrices of the dynamics at (x, t) for noise B w with
// w ~ N(0, noise_cov):
//   Sigma = B noise_cov B',  G~ = G' Sigma^+ G,  B~ = G' Sigma^+ B,
//   BB = B' Sigma^+ B.
struct ImportanceTerms {
  Matrix control_metric;   // G~
  Matrix importance_map;   // B~
  Matrix noise_quadratic;  // BB
};

// Throws ConfigError("control cost undefined for this dynamics") when G has
// components outside the range of Sigma.
ImportanceTerms ImportanceTermsFromDynamics(const DynamicsModel& model,
                                            const Vector& x, double t,
                                            const Matrix& noise_cov);

// R = lambda G' (B B')^+ G.
Matrix ControlCostMatrixFromDynamics(const DynamicsModel& model,
                                     const Vector& x, double t, double lambda);

// R = lambda G' (B noise_cov B')^+ G.
Matrix ControlCostMatrixFromDynamics(const DynamicsModel& model,
                                     const Vector& x, double t, double lambda,
                                     const Matrix& noise_cov);

// q~ = q + 1/2 u'Ru + lambda u' B~ eps / sqrt(dt)
//        + 1/2 lambda (1 - 1/c) eps' BB eps / dt
double ModifiedRunningCost(double q, const Eigen::Ref<const Vector>& u,
                           const Eigen::Ref<const Vector>& eps,
                           const Matrix& control_cost, double lambda, double c,
                           const Matrix& importance_map,
                           const Matrix& noise_quadratic, double dt);

// phi(x_N) + sum_j q~_j dt over a stored trajectory. Non-finite results are
// reported as +inf.
double TrajectoryCost(const RowMatrix& states, const ControlSequence& controls,
                      const NoiseRealization& noise, const CostModel& cost,
                      double dt, double t0 = 0.0);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_COST_H_
