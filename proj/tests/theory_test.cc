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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jump_mppi/cost.h"
#include "jump_mppi/dynamics.h"
#include "jump_mppi/mppi.h"
#include "jump_mppi/theory.h"
#include "test_models.h"

namespace jump_mppi::theory {
namespace {

constexpr double kPi = std::numbers::pi;

ExpFamilyParams ScalarParams(double mu, double sd, double sj, double nu,
                             double dt) {
  ExpFamilyParams p;
  p.mu = RowMatrix::Constant(1, 1, mu);
  p.sigma_d = Matrix::Constant(1, 1, sd);
  p.sigma_j = Matrix::Constant(1, 1, sj);
  p.nu = nu;
  p.dt = dt;
  return p;
}

TEST(LogPdfTest, ModeValueWithoutJump) {
  ExpFamilyParams p;
  p.mu = RowMatrix::Constant(1, 3, 0.4);
  p.sigma_d = Matrix::Identity(3, 3);
  p.sigma_j = Matrix::Identity(3, 3);
  p.nu = 0.25;
  p.dt = 0.02;
  Vector u = Vector::Constant(3, 0.4);
  EXPECT_NEAR(LogPdf(p, 0, u, false),
              std::log((1 - 0.005) * std::pow(2 * kPi, -1.5)), 1e-14);
}

TEST(LogPdfTest, JumpBranchIsWiderGaussian) {
  ExpFamilyParams p;
  p.mu = RowMatrix::Zero(1, 2);
  p.mu << 0.5, -0.3;
  p.sigma_d = Matrix::Identity(2, 2);
  p.sigma_j = Matrix::Identity(2, 2);
  p.nu = 0.5;
  p.dt = 0.02;
  Vector u(2);
  u << 1.7, 0.2;
  const double d2 = (u - p.mu.row(0).transpose()).squaredNorm();
  const double density = std::exp(-d2 / 4.0) / (2 * kPi * 2.0);
  EXPECT_NEAR(LogPdf(p, 0, u, true), std::log(0.01 * density), 1e-13);
}

TEST(LogPdfTest, MixtureIntegratesToOne) {
  ExpFamilyParams p = ScalarParams(0.3, 1.5, 6.0, 2.0, 0.02);
  const double h = 1e-3;
  double total = 0.0;
  for (double u = -40.0; u <= 40.0; u += h) {
    Vector v = Vector::Constant(1, u);
    total += (std::exp(LogPdf(p, 0, v, false)) + std::exp(LogPdf(p, 0, v, true))) * h;
  }
  EXPECT_NEAR(total, 1.0, 1e-3);
}

TEST(LogPdfGradientTest, ZeroAtMode) {
  ExpFamilyParams p = ScalarParams(1.2, 2.0, 3.0, 0.25, 0.02);
  EXPECT_EQ(LogPdfGradient(p, 0, Vector::Constant(1, 1.2), true)(0), 0.0);
  EXPECT_EQ(LogPdfGradient(p, 0, Vector::Constant(1, 1.2), false)(0), 0.0);
}

TEST(LogPdfGradientTest, ScalarHandValue) {
  ExpFamilyParams p = ScalarParams(1.0, 4.0, 1.0, 0.25, 0.02);
  EXPECT_NEAR(LogPdfGradient(p, 0, Vector::Constant(1, 3.0), false)(0), 1.0,
              1e-15);
}

TEST(LogPdfGradientTest, MatchesFiniteDifferences) {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3;
    ExpFamilyParams p;
    p.mu = RowMatrix(1, m);
    for (int i = 0; i < m; ++i) p.mu(0, i) = normal(gen);
    Matrix a(m, m), b(m, m);
    for (int i = 0; i < m * m; ++i) {
      a(i) = normal(gen);
      b(i) = normal(gen);
    }
    p.sigma_d = a * a.transpose() + 0.5 * Matrix::Identity(m, m);
    p.sigma_j = b * b.transpose() + 0.5 * Matrix::Identity(m, m);
    p.nu = 0.3;
    p.dt = 0.02;
    const bool jump = trial % 2;
    Vector u(m);
    for (int i = 0; i < m; ++i) u(i) = 2.0 * normal(gen);
    Vector theta = p.NaturalParameter(0, jump);
    Vector grad = LogPdfGradient(p, 0, u, jump);
    for (int i = 0; i < m; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(theta(i)));
      Vector plus = theta, minus = theta;
      plus(i) += h;
      minus(i) -= h;
      const double fd = (LogPdfAtNatural(p, plus, u, jump) -
                         LogPdfAtNatural(p, minus, u, jump)) /
                        (2 * h);
      EXPECT_LT(testing::RelativeError(fd, grad(i)), 1e-5);
    }
  }
}

TEST(ExpFamilyParamsTest, NaturalParameterRoundTrip) {
  ExpFamilyParams p;
  p.mu = RowMatrix(2, 2);
  p.mu << 1.0, -2.0, 0.5, 3.0;
  p.sigma_d = (Matrix(2, 2) << 2.0, 0.3, 0.3, 1.0).finished();
  p.sigma_j = (Matrix(2, 2) << 5.0, -1.0, -1.0, 4.0).finished();
  for (int step = 0; step < 2; ++step) {
    for (bool jump : {false, true}) {
      Vector theta = p.NaturalParameter(step, jump);
      EXPECT_NEAR((p.MeanFromNatural(theta, jump) - p.mu.row(step).transpose())
                      .norm(),
                  0.0, 1e-10);
    }
  }
}

NoiseRealization ScalarNoise(double d, bool jump, double j) {
  NoiseRealization n;
  n.Resize(1, 1);
  n.eps_d(0, 0) = d;
  n.jump_indicator[0] = jump;
  n.eps_j(0, 0) = jump ? j : 0.0;
  n.eps_combined = n.eps_d + n.eps_j;
  return n;
}

TEST(StochasticOptUpdateTest, ZeroNoiseOrStepKeepsMean) {
  RowMatrix mu = RowMatrix::Constant(1, 1, 0.7);
  std::vector<NoiseRealization> zero = {ScalarNoise(0, false, 0),
                                        ScalarNoise(0, false, 0)};
  Vector costs(2);
  costs << 1.0, 2.0;
  EXPECT_EQ(StochasticOptUpdate(mu, costs, zero, 1.0, 1.0), mu);
  std::vector<NoiseRealization> some = {ScalarNoise(0.3, true, 2.0),
                                        ScalarNoise(-0.1, false, 0)};
  EXPECT_EQ(StochasticOptUpdate(mu, costs, some, 0.0, 1.0), mu);
}

TEST(StochasticOptUpdateTest, ThreeSampleHandValue) {
  RowMatrix mu = RowMatrix::Constant(1, 1, 1.0);
  std::vector<NoiseRealization> noises = {ScalarNoise(0.2, false, 0.0),
                                          ScalarNoise(-0.5, true, 1.5),
                                          ScalarNoise(0.4, false, 0.0)};
  Vector costs(3);
  costs << 0.0, 1.0, 2.0;
  const double z = 1 + std::exp(-1.0) + std::exp(-2.0);
  const double mean = (0.2 + std::exp(-1.0) * 1.0 + std::exp(-2.0) * 0.4) / z;
  EXPECT_NEAR(StochasticOptUpdate(mu, costs, noises, 0.5, 1.0)(0, 0),
              1.0 + 0.5 * mean, 1e-15);
}

TEST(StochasticOptUpdateTest, ConcordsWithControlUpdate) {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> normal;
  const int samples = 50, steps = 6;
  const double dt = 0.02;
  std::vector<RolloutResult> rollouts(samples);
  std::vector<NoiseRealization> noises(samples);
  Vector costs(samples);
  for (int k = 0; k < samples; ++k) {
    NoiseRealization& n = rollouts[k].noise;
    n.Resize(steps, 2);
    for (int j = 0; j < steps; ++j) {
      n.eps_d(j, 0) = normal(gen);
      n.eps_d(j, 1) = normal(gen);
      if (normal(gen) > 1.2) {
        n.jump_indicator[j] = 1;
        n.eps_j(j, 0) = 3 * normal(gen);
        n.eps_j(j, 1) = 3 * normal(gen);
      }
    }
    n.eps_combined = n.eps_d + n.eps_j;
    noises[k] = n;
    costs(k) = 10 + 3 * normal(gen);
    rollouts[k].cost = costs(k);
  }
  Vector w_controller = ComputeWeights(costs, 0.9);
  Vector w_theory = ExponentialWeights(costs, 0.9);
  EXPECT_EQ(w_controller, w_theory);
  RowMatrix zero = RowMatrix::Zero(steps, 2);
  EXPECT_EQ(WeightedPerturbationMean(w_controller, rollouts),
            StochasticOptUpdate(zero, costs, noises, 1.0, 0.9));
}

TEST(GirsanovTest, ZeroControlUnitScaleIsZero) {
  testing::LinearModel model = testing::ScalarModel(-0.3);
  ControlSequence u = ControlSequence::Constant(Vector::Zero(1), 5, 0.1);
  NoiseRealization noise;
  noise.Resize(5, 1);
  noise.eps_d.setConstant(0.7);
  noise.eps_combined = noise.eps_d;
  EXPECT_EQ(GirsanovLogRatio(u, noise, model, RowMatrix::Zero(6, 1), 1.0, 0.1),
            0.0);
}

// log of N(d; 0, s dt) / N(d - u dt; 0, c s dt), d the increment beyond drift.
double DensityRatio(double u, double eps, double s, double c, double dt) {
  const double d = u * dt + eps * std::sqrt(dt);
  auto log_normal = [](double x, double var) {
    return -0.5 * std::log(2 * kPi * var) - 0.5 * x * x / var;
  };
  return log_normal(d, s * dt) - log_normal(d - u * dt, c * s * dt);
}

TEST(GirsanovTest, OneStepMatchesDensityRatio) {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.5, 3.0);
  testing::LinearModel model = testing::ScalarModel(0.4);
  for (int i = 0; i < 200; ++i) {
    const double u = 2 * normal(gen), eps = normal(gen), s = uniform(gen),
                 c = uniform(gen) + 0.5, dt = 0.01 * uniform(gen);
    ControlSequence controls =
        ControlSequence::Constant(Vector::Constant(1, u), 1, dt);
    NoiseRealization noise;
    noise.Resize(1, 1);
    noise.eps_d(0, 0) = eps;
    noise.eps_combined = noise.eps_d;
    const double ratio =
        GirsanovLogRatio(controls, noise, model, RowMatrix::Zero(2, 1), c, dt,
                         Matrix::Constant(1, 1, s)) +
        GirsanovNormalization(c, 1, 1);
    const double direct = DensityRatio(u, eps, s, c, dt);
    EXPECT_LT(std::abs(std::exp(ratio) / std::exp(direct) - 1.0), 1e-9);
  }
}

TEST(GirsanovTest, ModifiedCostIdentityOnRandomPaths) {
  std::mt19937_64 gen(37);
  std::normal_distribution<double> normal;
  testing::LinearModel model = testing::LinearModel::ControlChannel(
      -0.5 * Matrix::Identity(2, 2), Vector::Zero(2),
      (Matrix(2, 2) << 1.0, 0.2, -0.3, 0.8).finished());
  const double lambda = 1.3, c = 2.0, dt = 0.05;
  CostModel cost = CostModel::ControlChannel(
      [](const Eigen::Ref<const Vector>& x, double) { return x.squaredNorm(); },
      [](const Eigen::Ref<const Vector>& x) { return 5.0 * x.squaredNorm(); },
      2, lambda, c);
  for (int i = 0; i < 100; ++i) {
    ControlSequence controls =
        ControlSequence::Constant(Vector::Zero(2), 8, dt);
    NoiseRealization noise;
    noise.Resize(8, 2);
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 2; ++k) {
        controls.controls(j, k) = normal(gen);
        noise.eps_d(j, k) = normal(gen);
      }
    }
    noise.eps_combined = noise.eps_d;
    RolloutResult r = Rollout(model, Vector::Constant(2, 0.5), controls, noise,
                              cost);
    CostModel plain = cost;
    plain.control_cost.setZero();
    plain.importance_map.setZero();
    plain.noise_quadratic.setZero();
    const double s = TrajectoryCost(r.trajectory.states, controls, noise, plain,
                                    dt);
    const double ratio =
        GirsanovLogRatio(controls, noise, model, r.trajectory.states, c, dt);
    EXPECT_LT(testing::RelativeError(r.cost, s - lambda * ratio), 1e-9);
  }
}

}  // namespace
}  // namespace jump_mppi::theory
