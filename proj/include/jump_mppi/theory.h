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

#ifndef JUMP_MPPI_THEORY_H_
#define JUMP_MPPI_THEORY_H_

#include <vector>

#include "jump_mppi/dynamics.h"
#include "jump_mppi/types.h"

// Reference implementations of the sampling distribution, its score, the
// gradient-ascent update law and the path likelihood ratio. They are kept
// independent of the controller code so the two can be cross-checked, and
// are also useful for validating custom dynamics.
namespace jump_mppi::theory {

// Per-step control distribution u_j = mu_j + eps_D + I_j eps_J with
// eps_D ~ N(0, sigma_d), eps_J ~ N(0, sigma_j), P(I_j = 1) = nu dt.
struct ExpFamilyParams {
  RowMatrix mu;  // N x m step means
  Matrix sigma_d;
  Matrix sigma_j;
  double nu = 0.0;
  double dt = 0.0;

  // sigma_d + I sigma_j.
  Matrix BranchCovariance(bool jump) const;
  // theta_j = (sigma_d + I sigma_j)^(-1/2) mu_j.
  Vector NaturalParameter(int step, bool jump) const;
  // mu = (sigma_d + I sigma_j)^(1/2) theta.
  Vector MeanFromNatural(const Vector& theta, bool jump) const;
};

// Log density of the branch selected by `jump`, including the nu dt or
// 1 - nu dt branch probability.
double LogPdf(const ExpFamilyParams& params, int step, const Vector& u,
              bool jump);

// Same density parameterized directly by the natural parameter.
double LogPdfAtNatural(const ExpFamilyParams& params, const Vector& theta,
                       const Vector& u, bool jump);

// Score with respect to theta_j: T(u_j) - theta_j
//   = (sigma_d + I sigma_j)^(-1/2) (u_j - mu_j).
Vector LogPdfGradient(const ExpFamilyParams& params, int step, const Vector& u,
                      bool jump);

// Softmax of -cost / lambda with min-cost baseline; +inf costs get zero.
Vector ExponentialWeights(const Vector& costs, double lambda);

// mu_j + alpha E[exp(-J/lambda) (eps_D + I eps_J)] / E[exp(-J/lambda)],
// with the expectation replaced by the sample average over `noises`.
RowMatrix StochasticOptUpdate(const RowMatrix& mu, const Vector& costs,
                              const std::vector<NoiseRealization>& noises,
                              double alpha, double lambda);

// Path-dependent part of log dP/dQ for a discretized path with matrices
// evaluated at the stored states:
//
//   -sum_j [ 1/2 u' G~ u dt + u' B~ eps sqrt(dt)
//            + 1/2 (1 - 1/c) eps' BB eps ]
//
// where Sigma = B noise_cov B', G~ = G' Sigma^+ G, B~ = G' Sigma^+ B,
// BB = B' Sigma^+ B and eps is the combined per-step noise.
double GirsanovLogRatio(const ControlSequence& controls,
                        const NoiseRealization& noise,
                        const DynamicsModel& model, const RowMatrix& states,
                        double c, double dt, const Matrix& noise_cov);

// Unit noise covariance form.
double GirsanovLogRatio(const ControlSequence& controls,
                        const NoiseRealization& noise,
                        const DynamicsModel& model, const RowMatrix& states,
                        double c, double dt);

// Path-independent normalization 1/2 N m log c, completing the log density
// ratio of the discretized paths.
double GirsanovNormalization(double c, int control_dim, int steps);

}  // namespace jump_mppi::theory

#endif  // JUMP_MPPI_THEORY_H_
