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

#include "jump_mppi/theory.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "jump_mppi/cost.h"

namespace jump_mppi::theory {
namespace {

Eigen::SelfAdjointEigenSolver<Matrix> Decompose(const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("covariance must be positive definite");
  }
  return eig;
}

double GaussianLogDensity(const Vector& u, const Vector& mean,
                          const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig = Decompose(cov);
  Vector diff = u - mean;
  Vector coords = eig.eigenvectors().transpose() * diff;
  double quad = 0.0;
  double log_det = 0.0;
  for (int i = 0; i < coords.size(); ++i) {
    quad += coords(i) * coords(i) / eig.eigenvalues()(i);
    log_det += std::log(eig.eigenvalues()(i));
  }
  const double m = static_cast<double>(u.size());
  return -0.5 * m * std::log(2.0 * std::numbers::pi) - 0.5 * log_det -
         0.5 * quad;
}

double BranchLogProbability(const ExpFamilyParams& params, bool jump) {
  const double p = params.nu * params.dt;
  return jump ? std::log(p) : std::log1p(-p);
}

}  // namespace

Matrix ExpFamilyParams::BranchCovariance(bool jump) const {
  return jump ? Matrix(sigma_d + sigma_j) : sigma_d;
}

Vector ExpFamilyParams::NaturalParameter(int step, bool jump) const {
  return Decompose(BranchCovariance(jump)).operatorInverseSqrt() *
         mu.row(step).transpose();
}

Vector ExpFamilyParams::MeanFromNatural(const Vector& theta, bool jump) const {
  return Decompose(BranchCovariance(jump)).operatorSqrt() * theta;
}

double LogPdf(const ExpFamilyParams& params, int step, const Vector& u,
              bool jump) {
  return BranchLogProbability(params, jump) +
         GaussianLogDensity(u, params.mu.row(step).transpose(),
                            params.BranchCovariance(jump));
}

double LogPdfAtNatural(const ExpFamilyParams& params, const Vector& theta,
                       const Vector& u, bool jump) {
  return BranchLogProbability(params, jump) +
         GaussianLogDensity(u, params.MeanFromNatural(theta, jump),
                            params.BranchCovariance(jump));
}

Vector LogPdfGradient(const ExpFamilyParams& params, int step, const Vector& u,
                      bool jump) {
  Matrix inv_sqrt =
      Decompose(params.BranchCovariance(jump)).operatorInverseSqrt();
  Vector sufficient = inv_sqrt * u;  // T(u_j)
  Vector theta = inv_sqrt * params.mu.row(step).transpose();
  return sufficient - theta;
}

Vector ExponentialWeights(const Vector& costs, double lambda) {
  double baseline = std::numeric_limits<double>::infinity();
  for (double cost : costs) {
    if (std::isfinite(cost) && cost < baseline) baseline = cost;
  }
  if (!std::isfinite(baseline)) throw NoViableRolloutError();
  Vector w(costs.size());
  double norm = 0.0;
  for (int m = 0; m < costs.size(); ++m) {
    w(m) = std::isfinite(costs(m)) ? std::exp(-(costs(m) - baseline) / lambda)
                                   : 0.0;
    norm += w(m);
  }
  return w / norm;
}

RowMatrix StochasticOptUpdate(const RowMatrix& mu, const Vector& costs,
                              const std::vector<NoiseRealization>& noises,
                              double alpha, double lambda) {
  if (static_cast<int>(noises.size()) != costs.size()) {
    throw std::invalid_argument("one noise table per cost is required");
  }
  Vector w = ExponentialWeights(costs, lambda);
  RowMatrix step = RowMatrix::Zero(mu.rows(), mu.cols());
  for (int m = 0; m < costs.size(); ++m) {
    const NoiseRealization& noise = noises[m];
    if (noise.eps_d.rows() != mu.rows() || noise.eps_d.cols() != mu.cols()) {
      throw std::invalid_argument("noise table does not match mu");
    }
    RowMatrix perturbation = noise.eps_d;
    for (int j = 0; j < mu.rows(); ++j) {
      if (noise.jump_indicator[j]) perturbation.row(j) += noise.eps_j.row(j);
    }
    step += w(m) * perturbation;
  }
  return mu + alpha * step;
}

double GirsanovLogRatio(const ControlSequence& controls,
                        const NoiseRealization& noise,
                        const DynamicsModel& model, const RowMatrix& states,
                        double c, double dt, const Matrix& noise_cov) {
  const int n_steps = controls.length();
  if (noise.length() != n_steps || states.rows() < n_steps) {
    throw std::invalid_argument("path lengths differ");
  }
  const double sqrt_dt = std::sqrt(dt);
  double exponent = 0.0;
  for (int j = 0; j < n_steps; ++j) {
    Vector x = states.row(j).transpose();
    ImportanceTerms terms =
        ImportanceTermsFromDynamics(model, x, j * dt, noise_cov);
    Vector u = controls.controls.row(j).transpose();
    Vector eps = noise.eps_combined.row(j).transpose();
    exponent += 0.5 * u.dot(terms.control_metric * u) * dt +
                u.dot(terms.importance_map * eps) * sqrt_dt +
                0.5 * (1.0 - 1.0 / c) * eps.dot(terms.noise_quadratic * eps);
  }
  return -exponent;
}

double GirsanovLogRatio(const ControlSequence& controls,
                        const NoiseRealization& noise,
                        const DynamicsModel& model, const RowMatrix& states,
                        double c, double dt) {
  const int m = model.control_dim();
  return GirsanovLogRatio(controls, noise, model, states, c, dt,
                          Matrix::Identity(m, m));
}

double GirsanovNormalization(double c, int control_dim, int steps) {
  return 0.5 * steps * control_dim * std::log(c);
}

}  // namespace jump_mppi::theory
