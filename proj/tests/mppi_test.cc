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
#include <numeric>
#include <random>

#include "jump_mppi/cartpole.h"
#include "jump_mppi/mppi.h"
#include "jump_mppi/tasks.h"
#include "test_models.h"

namespace jump_mppi {
namespace {

Vector Costs(std::initializer_list<double> values) {
  Vector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

TEST(ComputeWeightsTest, EqualCostsAreUniform) {
  Vector w = ComputeWeights(Vector::Constant(8, 3.7), 0.5);
  for (int i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(w(i), 1.0 / 8.0);
}

TEST(ComputeWeightsTest, TwoPointClosedForm) {
  const double lambda = 1.7;
  Vector w = ComputeWeights(Costs({0.0, lambda * std::log(2.0)}), lambda);
  EXPECT_NEAR(w(0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(w(1), 1.0 / 3.0, 1e-15);
}

TEST(ComputeWeightsTest, ThreePointDirectSum) {
  Vector w = ComputeWeights(Costs({0.0, 1.0, 2.0}), 1.0);
  const double z = 1.0 + std::exp(-1.0) + std::exp(-2.0);
  EXPECT_NEAR(w(0), 1.0 / z, 1e-15);
  EXPECT_NEAR(w(1), std::exp(-1.0) / z, 1e-15);
  EXPECT_NEAR(w(2), std::exp(-2.0) / z, 1e-15);
}

TEST(ComputeWeightsTest, InfiniteCostsGetZeroWeight) {
  const double inf = std::numeric_limits<double>::infinity();
  Vector w = ComputeWeights(Costs({inf, 2.0, inf, 2.0}), 1.0);
  EXPECT_EQ(w(0), 0.0);
  EXPECT_EQ(w(2), 0.0);
  EXPECT_DOUBLE_EQ(w(1), 0.5);
}

TEST(ComputeWeightsTest, AllInfiniteIsNotViable) {
  const double inf = std::numeric_limits<double>::infinity();
  try {
    ComputeWeights(Costs({inf, inf}), 1.0);
    FAIL() << "expected failure";
  } catch (const NoViableRolloutError& e) {
    EXPECT_STREQ(e.what(), "no viable rollout");
  }
}

TEST(ComputeWeightsTest, HugeCostsDoNotOverflow) {
  Vector w = ComputeWeights(Costs({1e300, 1e300 + 1e285}), 1e-3);
  EXPECT_TRUE(w.allFinite());
  EXPECT_NEAR(w.sum(), 1.0, 1e-15);
}

RolloutResult ScalarRollout(double eps) {
  RolloutResult r;
  r.noise.Resize(1, 1);
  r.noise.eps_d(0, 0) = eps;
  r.noise.eps_combined(0, 0) = eps;
  return r;
}

TEST(UpdateControlsTest, ZeroNoiseKeepsControls) {
  ControlSequence nominal = ControlSequence::Constant(Vector::Constant(2, 0.3),
                                                      4, 0.02);
  std::vector<RolloutResult> rollouts(3);
  for (auto& r : rollouts) r.noise.Resize(4, 2);
  ControlSequence out = UpdateControls(nominal, Vector::Constant(3, 1.0 / 3),
                                       rollouts, Matrix::Identity(2, 2));
  EXPECT_EQ(out.controls, nominal.controls);
}

TEST(UpdateControlsTest, SingleSample) {
  ControllerState state;
  state.config.lambda = 1.0;
  state.nominal_controls = ControlSequence::Constant(Vector::Constant(1, 2.0),
                                                     1, 0.25);
  std::vector<RolloutResult> rollouts = {ScalarRollout(0.3)};
  rollouts[0].cost = 12.0;
  Matrix mapping = Matrix::Constant(1, 1, 1.5);
  ControlSequence out = UpdateControls(state, rollouts, mapping);
  EXPECT_NEAR(out.controls(0, 0), 2.0 + 1.5 * 0.3 / 0.5, 1e-15);
}

TEST(UpdateControlsTest, ThreeUniformSamples) {
  ControllerState state;
  state.config.lambda = 1.0;
  state.nominal_controls = ControlSequence::Constant(Vector::Constant(1, 0.7),
                                                     1, 0.04);
  std::vector<RolloutResult> rollouts = {ScalarRollout(0.1), ScalarRollout(-0.2),
                                         ScalarRollout(0.4)};
  for (auto& r : rollouts) r.cost = 5.0;
  ControlSequence out =
      UpdateControls(state, rollouts, Matrix::Identity(1, 1));
  // Direct summation: (0.1 - 0.2 + 0.4) / 3 / sqrt(0.04).
  EXPECT_NEAR(out.controls(0, 0), 0.7 + ((0.1 - 0.2 + 0.4) / 3.0) / 0.2, 1e-15);
  EXPECT_NEAR(out.controls(0, 0) - 0.7, 0.5, 1e-12);

  rollouts[2] = ScalarRollout(0.2);
  rollouts[2].cost = 5.0;
  out = UpdateControls(state, rollouts, Matrix::Identity(1, 1));
  EXPECT_NEAR(out.controls(0, 0) - 0.7, 0.1667, 1e-4);
}

TEST(UpdateControlsTest, IncludesJumpMarks) {
  ControllerState state;
  state.config.lambda = 1.0;
  state.nominal_controls = ControlSequence::Constant(Vector::Zero(1), 1, 0.01);
  RolloutResult r = ScalarRollout(0.2);
  r.noise.jump_indicator[0] = 1;
  r.noise.eps_j(0, 0) = 3.0;
  r.noise.eps_combined(0, 0) = 3.2;
  ControlSequence out = UpdateControls(state, {r}, Matrix::Identity(1, 1));
  EXPECT_NEAR(out.controls(0, 0), 32.0, 1e-12);
}

TEST(WarmStartShiftTest, ShiftsAndAppends) {
  ControlSequence seq;
  seq.dt = 0.02;
  seq.controls.resize(3, 1);
  seq.controls << 1.0, 2.0, 3.0;
  ControlSequence out = WarmStartShift(seq, Vector::Constant(1, 9.0));
  EXPECT_EQ(out.controls(0, 0), 2.0);
  EXPECT_EQ(out.controls(1, 0), 3.0);
  EXPECT_EQ(out.controls(2, 0), 9.0);
  EXPECT_EQ(out.dt, 0.02);
}

TEST(WarmStartShiftTest, SingleStepIsReplaced) {
  ControlSequence seq = ControlSequence::Constant(Vector::Constant(2, 4.0), 1,
                                                  0.1);
  ControlSequence out = WarmStartShift(seq, Vector::Constant(2, -1.0));
  EXPECT_TRUE((out.controls.array() == -1.0).all());
}

TEST(WarmStartShiftTest, NShiftsReachInit) {
  ControlSequence seq;
  seq.dt = 0.1;
  seq.controls = RowMatrix::Random(6, 2);
  Vector z = Vector::Constant(2, 0.25);
  for (int i = 0; i < 6; ++i) seq = WarmStartShift(seq, z);
  EXPECT_TRUE((seq.controls.array() == 0.25).all());
}

MppiConfig ScalarConfig(int samples, int horizon) {
  MppiConfig cfg;
  cfg.lambda = 0.8;
  cfg.c = 1.5;
  cfg.sigma_d = Matrix::Identity(1, 1);
  cfg.sigma_j = Matrix::Constant(1, 1, 4.0);
  cfg.nu = 4.0;
  cfg.dt = 0.02;
  cfg.horizon_n = horizon;
  cfg.samples_m = samples;
  cfg.u_init = Vector::Zero(1);
  return cfg;
}

CostModel QuadraticCost(double lambda, double c) {
  return CostModel::ControlChannel(
      [](const Eigen::Ref<const Vector>& x, double) { return x(0) * x(0); },
      [](const Eigen::Ref<const Vector>& x) { return 2.0 * x(0) * x(0); }, 1,
      lambda, c);
}

TEST(MppiIterationTest, TinyCaseMatchesScalarEvaluation) {
  const double a = -1.0;
  testing::LinearModel model = testing::ScalarModel(a);
  MppiConfig cfg = ScalarConfig(2, 1);
  ControllerState state = ControllerState::Initial(cfg);
  state.nominal_controls.controls(0, 0) = 0.2;
  state.iteration_index = 3;
  CostModel cost = QuadraticCost(cfg.lambda, cfg.c);
  const double x0 = 0.5;
  MppiWorkspace ws;
  IterationResult out = MppiIteration(state, model, cost, Vector::Constant(1, x0),
                                      11, &ws);

  const double dt = cfg.dt, u = 0.2, lambda = cfg.lambda, c = cfg.c;
  double costs[2], eps[2];
  for (int m = 0; m < 2; ++m) {
    const NoiseRealization& n = ws.rollouts()[m].noise;
    const double ed = n.eps_d(0, 0);
    const double ej = n.jump_indicator[0] ? n.eps_j(0, 0) : 0.0;
    eps[m] = ed + ej;
    const double x1 = x0 + (a * x0 + u) * dt + (ed + ej) * std::sqrt(dt);
    const double q_tilde = x0 * x0 + 0.5 * lambda * u * u +
                           lambda * u * eps[m] / std::sqrt(dt) +
                           0.5 * lambda * (1 - 1 / c) * eps[m] * eps[m] / dt;
    costs[m] = q_tilde * dt + 2.0 * x1 * x1;
    EXPECT_NEAR(ws.rollouts()[m].cost, costs[m], 1e-13);
  }
  const double base = std::min(costs[0], costs[1]);
  const double w0 = std::exp(-(costs[0] - base) / lambda);
  const double w1 = std::exp(-(costs[1] - base) / lambda);
  const double expected =
      u + (w0 * eps[0] + w1 * eps[1]) / (w0 + w1) / std::sqrt(dt);
  EXPECT_NEAR(out.controls.controls(0, 0), expected, 1e-13);
  EXPECT_NEAR(out.diagnostics.weights(0), w0 / (w0 + w1), 1e-15);
}

TEST(MppiIterationTest, RepeatCallsAreBitIdentical) {
  CartpoleModel model;
  TaskSpec task = MakeCartpoleTask();
  MppiConfig cfg = ScalarConfig(200, 30);
  cfg.u_init = Vector::Zero(1);
  CostModel cost = MakeCostModel(task, cfg);
  ControllerState state = ControllerState::Initial(cfg);
  state.iteration_index = 5;
  IterationResult a = MppiIteration(state, model, cost, task.initial_state, 3);
  IterationResult b = MppiIteration(state, model, cost, task.initial_state, 3);
  EXPECT_EQ(a.controls.controls, b.controls.controls);
  EXPECT_EQ(a.diagnostics.weights, b.diagnostics.weights);
  state.iteration_index = 6;
  IterationResult c = MppiIteration(state, model, cost, task.initial_state, 3);
  EXPECT_NE(a.controls.controls, c.controls.controls);
}

TEST(MppiIterationTest, WorkerCountDoesNotChangeResult) {
  CartpoleModel model;
  TaskSpec task = MakeCartpoleTask();
  MppiConfig cfg = ScalarConfig(300, 25);
  CostModel cost = MakeCostModel(task, cfg);
  ControllerState state = ControllerState::Initial(cfg);
  ThreadPool one(1), four(4);
  IterationResult serial =
      MppiIteration(state, model, cost, task.initial_state, 9, nullptr, &one);
  IterationResult parallel =
      MppiIteration(state, model, cost, task.initial_state, 9, nullptr, &four);
  EXPECT_EQ(serial.controls.controls, parallel.controls.controls);
  EXPECT_EQ(serial.diagnostics.weights, parallel.diagnostics.weights);
}

TEST(MppiIterationTest, ZeroRateMatchesOldSampler) {
  CartpoleModel model;
  TaskSpec task = MakeCartpoleTask();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MppiConfig new_cfg = ScalarConfig(100, 20);
    new_cfg.nu = 0.0;
    MppiConfig old_cfg = new_cfg;
    old_cfg.jump_sampling_enabled = false;
    CostModel cost = MakeCostModel(task, new_cfg);
    IterationResult a = MppiIteration(ControllerState::Initial(new_cfg), model,
                                      cost, task.initial_state, seed);
    IterationResult b = MppiIteration(ControllerState::Initial(old_cfg), model,
                                      cost, task.initial_state, seed);
    EXPECT_EQ(a.controls.controls, b.controls.controls);
  }
}

TEST(MppiIterationTest, DiagnosticsAreConsistent) {
  CartpoleModel model;
  TaskSpec task = MakeCartpoleTask();
  MppiConfig cfg = ScalarConfig(250, 20);
  CostModel cost = MakeCostModel(task, cfg);
  ControllerState state = ControllerState::Initial(cfg);
  IterationResult out = MppiIteration(state, model, cost, task.initial_state, 4);
  const UpdateDiagnostics& d = out.diagnostics;
  EXPECT_NEAR(d.weights.sum(), 1.0, 1e-12);
  EXPECT_GE(d.weights.minCoeff(), 0.0);
  EXPECT_GE(d.effective_sample_size, 1.0 - 1e-12);
  EXPECT_LE(d.effective_sample_size, cfg.samples_m + 1e-9);
  EXPECT_EQ(d.per_step_update_norm.size(), cfg.horizon_n);
  EXPECT_TRUE(std::isfinite(d.min_cost));
  EXPECT_EQ(d.diverged_rollouts, 0);
}

TEST(MppiIterationTest, DivergentSamplesAreDropped) {
  testing::CubicModel model;
  MppiConfig cfg = ScalarConfig(64, 40);
  cfg.nu = 0.0;
  cfg.sigma_d = Matrix::Constant(1, 1, 4.0);
  CostModel cost = QuadraticCost(cfg.lambda, cfg.c);
  IterationResult out = MppiIteration(ControllerState::Initial(cfg), model,
                                      cost, Vector::Constant(1, 0.5), 1);
  EXPECT_GT(out.diagnostics.diverged_rollouts, 0);
  EXPECT_LT(out.diagnostics.diverged_rollouts, cfg.samples_m);
  EXPECT_TRUE(out.controls.controls.allFinite());
}

TEST(MppiIterationTest, AllDivergentIsNotViable) {
  testing::CubicModel model;
  MppiConfig cfg = ScalarConfig(8, 10);
  CostModel cost = QuadraticCost(cfg.lambda, cfg.c);
  EXPECT_THROW(MppiIteration(ControllerState::Initial(cfg), model, cost,
                             Vector::Constant(1, 1e120), 1),
               NoViableRolloutError);
}

TEST(MppiIterationTest, UnbiasedWithoutCostSensitivity) {
  testing::LinearModel model = testing::ScalarModel(0.0);
  MppiConfig cfg = ScalarConfig(1000, 10);
  cfg.c = 1.0;
  cfg.nu = 0.0;
  CostModel cost = CostModel::ControlChannel(
      [](const Eigen::Ref<const Vector>&, double) { return 0.0; },
      [](const Eigen::Ref<const Vector>&) { return 0.0; }, 1, cfg.lambda, 1.0);
  ControllerState state = ControllerState::Initial(cfg);
  const int repeats = 200;
  Vector mean_update = Vector::Zero(cfg.horizon_n);
  MppiWorkspace ws;
  for (int r = 0; r < repeats; ++r) {
    state.iteration_index = r;
    IterationResult out =
        MppiIteration(state, model, cost, Vector::Zero(1), 21, &ws);
    mean_update += out.controls.controls.col(0);
  }
  mean_update /= repeats;
  // Each update is mean(eps)/sqrt(dt) with sd sigma_d / sqrt(M dt).
  const double se = 1.0 / std::sqrt(cfg.samples_m * cfg.dt * repeats);
  for (int j = 0; j < cfg.horizon_n; ++j) {
    EXPECT_LT(std::abs(mean_update(j)), 3.0 * se) << "step " << j;
  }
}

TEST(ControlUpdateMappingTest, IdentityForControlChannel) {
  ImportanceTerms terms{2.0 * Matrix::Identity(2, 2),
                        2.0 * Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  EXPECT_NEAR((ControlUpdateMapping(terms) - Matrix::Identity(2, 2)).norm(), 0.0,
              1e-14);
}

}  // namespace
}  // namespace jump_mppi
