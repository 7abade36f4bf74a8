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

#include "jump_mppi/cost.h"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace jump_mppi {
namespace {

// Pseudo-inverse of a symmetric PSD matrix, plus the projector onto its range.
void SymmetricPseudoInverse(const Matrix& sigma, Matrix& pinv,
                            Matrix& range_projector) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  const Vector& values = eig.eigenvalues();
  const Matrix& vectors = eig.eigenvectors();
  double largest = values.cwiseAbs().maxCoeff();
  double tol = largest * 1e-10 * std::max<double>(1, sigma.rows());
  Vector inv = Vector::Zero(values.size());
  Vector keep = Vector::Zero(values.size());
  for (int i = 0; i < values.size(); ++i) {
    if (values(i) > tol) {
      inv(i) = 1.0 / values(i);
      keep(i) = 1.0;
    }
  }
  pinv = vectors * inv.asDiagonal() * vectors.transpose();
  range_projector = vectors * keep.asDiagonal() * vectors.transpose();
}

}  // namespace

CostModel CostModel::ControlChannel(StateCostFn state_cost,
                                    TerminalCostFn terminal_cost, int m,
                                    double lambda, double c) {
  CostModel cost;
  cost.state_cost = std::move(state_cost);
  cost.terminal_cost = std::move(terminal_cost);
  cost.control_cost = lambda * Matrix::Identity(m, m);
  cost.lambda = lambda;
  cost.c = c;
  cost.importance_map = Matrix::Identity(m, m);
  cost.noise_quadratic = Matrix::Identity(m, m);
  return cost;
}

ImportanceTerms ImportanceTermsFromDynamics(const DynamicsModel& model,
                                            const Vector& x, double t,
                                            const Matrix& noise_cov) {
  Matrix g = model.ControlMatrix(x, t);
  Matrix b = model.DiffusionMatrix(x, t);
  Matrix sigma = b * noise_cov * b.transpose();
  sigma = 0.5 * (sigma + sigma.transpose());
  Matrix pinv, projector;
  SymmetricPseudoInverse(sigma, pinv, projector);
  double residual = (g - projector * g).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (!(residual <= 1e-8 * scale) || !pinv.allFinite()) {
    throw ConfigError("control cost undefined for this dynamics");
  }
  ImportanceTerms terms;
  terms.control_metric = g.transpose() * pinv * g;
  terms.control_metric =
      0.5 * (terms.control_metric + terms.control_metric.transpose());
  terms.importance_map = g.transpose() * pinv * b;
  terms.noise_quadratic = b.transpose() * pinv * b;
  terms.noise_quadratic =
      0.5 * (terms.noise_quadratic + terms.noise_quadratic.transpose());
  return terms;
}

Matrix ControlCostMatrixFromDynamics(const DynamicsModel& model,
                                     const Vector& x, double t, double lambda) {
  const int m = model.control_dim();
  return ControlCostMatrixFromDynamics(model, x, t, lambda,
                                       Matrix::Identity(m, m));
}

Matrix ControlCostMatrixFromDynamics(const DynamicsModel& model,
                                     const Vector& x, double t, double lambda,
                                     const Matrix& noise_cov) {
  return lambda *
         ImportanceTermsFromDynamics(model, x, t, noise_cov).control_metric;
}

namespace {

// x' A y without forming A y (this sits in the rollout inner loop).
double Bilinear(const Eigen::Ref<const Vector>& x, const Matrix& a,
                const Eigen::Ref<const Vector>& y) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double column = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) column += x(i) * a(i, j);
    total += column * y(j);
  }
  return total;
}

}  // namespace

double ModifiedRunningCost(double q, const Eigen::Ref<const Vector>& u,
                           const Eigen::Ref<const Vector>& eps,
                           const Matrix& control_cost, double lambda, double c,
                           const Matrix& importance_map,
                           const Matrix& noise_quadratic, double dt) {
  double control = 0.5 * Bilinear(u, control_cost, u);
  double cross = lambda * Bilinear(u, importance_map, eps) / std::sqrt(dt);
  double variance = 0.0;
  if (c != 1.0) {
    variance = 0.5 * lambda * (1.0 - 1.0 / c) *
               Bilinear(eps, noise_quadratic, eps) / dt;
  }
  return q + control + cross + variance;
}

double TrajectoryCost(const RowMatrix& states, const ControlSequence& controls,
                      const NoiseRealization& noise, const CostModel& cost,
                      double dt, double t0) {
  const int n_steps = controls.length();
  double total = 0.0;
  for (int j = 0; j < n_steps; ++j) {
    double t = t0 + j * dt;
    double q = cost.state_cost(states.row(j).transpose(), t);
    total += ModifiedRunningCost(q, controls.controls.row(j).transpose(),
                                 noise.eps_combined.row(j).transpose(),
                                 cost.control_cost, cost.lambda, cost.c,
                                 cost.importance_map, cost.noise_quadratic,
                                 dt) *
             dt;
  }
  total += cost.terminal_cost(states.row(n_steps).transpose());
  if (!std::isfinite(total)) return std::numeric_limits<double>::infinity();
  return total;
}

}  // namespace jump_mppi
