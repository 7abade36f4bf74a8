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

#include "jump_mppi/mppi.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>

namespace jump_mppi {

ControllerState ControllerState::Initial(const MppiConfig& config) {
  ControllerState state;
  state.config = ValidateConfig(config);
  state.nominal_controls =
      ControlSequence::Constant(config.u_init, config.horizon_n, config.dt);
  return state;
}

Vector ComputeWeights(const Vector& costs, double lambda) {
  double min_cost = std::numeric_limits<double>::infinity();
  for (int i = 0; i < costs.size(); ++i) {
    if (std::isfinite(costs(i))) min_cost = std::min(min_cost, costs(i));
  }
  if (!std::isfinite(min_cost)) throw NoViableRolloutError();
  Vector weights(costs.size());
  double total = 0.0;
  for (int i = 0; i < costs.size(); ++i) {
    weights(i) = std::isfinite(costs(i))
                     ? std::exp(-(costs(i) - min_cost) / lambda)
                     : 0.0;
    total += weights(i);
  }
  // total >= 1: the minimum contributes exp(0).
  weights /= total;
  return weights;
}

RowMatrix WeightedPerturbationMean(
    const Vector& weights, const std::vector<RolloutResult>& rollouts) {
  if (rollouts.empty() || weights.size() != static_cast<int>(rollouts.size())) {
    throw std::invalid_argument("weights and rollouts differ in size");
  }
  const RowMatrix& first = rollouts.front().noise.eps_combined;
  RowMatrix mean = RowMatrix::Zero(first.rows(), first.cols());
  for (std::size_t k = 0; k < rollouts.size(); ++k) {
    const double w = weights(static_cast<int>(k));
    if (w == 0.0) continue;
    mean += w * rollouts[k].noise.eps_combined;
  }
  return mean;
}

ControlSequence UpdateControls(const ControlSequence& nominal,
                               const Vector& weights,
                               const std::vector<RolloutResult>& rollouts,
                               const Matrix& mapping) {
  RowMatrix mean = WeightedPerturbationMean(weights, rollouts);
  if (mean.rows() != nominal.length() || mean.cols() != nominal.control_dim()) {
    throw std::invalid_argument("rollout noise does not match the controls");
  }
  ControlSequence updated = nominal;
  const double inv_sqrt_dt = 1.0 / std::sqrt(nominal.dt);
  const bool identity =
      mapping.rows() == mapping.cols() &&
      mapping.isIdentity(0.0);
  for (int j = 0; j < nominal.length(); ++j) {
    if (identity) {
      updated.controls.row(j) += mean.row(j) * inv_sqrt_dt;
    } else {
      updated.controls.row(j) +=
          (mapping * mean.row(j).transpose()).transpose() * inv_sqrt_dt;
    }
  }
  return updated;
}

ControlSequence UpdateControls(const ControllerState& state,
                               const std::vector<RolloutResult>& rollouts,
                               const Matrix& mapping) {
  Vector costs(static_cast<int>(rollouts.size()));
  for (std::size_t k = 0; k < rollouts.size(); ++k) {
    costs(static_cast<int>(k)) = rollouts[k].cost;
  }
  Vector weights = ComputeWeights(costs, state.config.lambda);
  return UpdateControls(state.nominal_controls, weights, rollouts, mapping);
}

Matrix ControlUpdateMapping(const ImportanceTerms& terms) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> metric(terms.control_metric);
  return metric.solve(terms.importance_map);
}

ControlSequence WarmStartShift(const ControlSequence& controls,
                               const Vector& u_init) {
  ControlSequence shifted = controls;
  const int n = controls.length();
  if (n == 0) return shifted;
  if (u_init.size() != controls.control_dim()) {
    throw std::invalid_argument("u_init dimension mismatch");
  }
  if (n > 1) {
    shifted.controls.topRows(n - 1) = controls.controls.bottomRows(n - 1);
  }
  shifted.controls.row(n - 1) = u_init.transpose();
  return shifted;
}

IterationResult MppiIteration(const ControllerState& state,
                              const DynamicsModel& model,
                              const CostModel& cost_model, const Vector& x0,
                              std::uint64_t master_seed,
                              MppiWorkspace* workspace, ThreadPool* pool,
                              double t0) {
  const MppiConfig& config = state.config;
  const int samples = config.samples_m;
  const int horizon = config.horizon_n;
  if (state.nominal_controls.length() != horizon) {
    throw std::invalid_argument("nominal controls do not match horizon_n");
  }
  if (model.control_dim() != config.control_dim() ||
      x0.size() != model.state_dim()) {
    throw std::invalid_argument("model dimensions do not match the config");
  }
  MppiWorkspace local;
  MppiWorkspace& ws = workspace ? *workspace : local;
  ws.rollouts_.resize(samples);
  const int workers = pool ? pool->size() : 1;
  if (static_cast<int>(ws.step_ws_.size()) < workers) {
    ws.step_ws_.resize(workers);
  }

  NoiseSampler sampler(config);
  const std::uint64_t base =
      static_cast<std::uint64_t>(state.iteration_index) *
      static_cast<std::uint64_t>(samples);
  ParallelFor(pool, samples, [&](int m, int worker) {
    RolloutResult& rollout = ws.rollouts_[m];
    sampler.Sample(RngStream{master_seed, base + static_cast<std::uint64_t>(m)},
                   horizon, rollout.noise);
    RolloutInPlace(model, x0, state.nominal_controls, cost_model, t0,
                   ws.step_ws_[worker], rollout);
  });

  IterationResult result;
  Vector costs(samples);
  int diverged = 0;
  for (int m = 0; m < samples; ++m) {
    costs(m) = ws.rollouts_[m].cost;
    if (!std::isfinite(costs(m))) ++diverged;
  }
  UpdateDiagnostics& diag = result.diagnostics;
  diag.weights = ComputeWeights(costs, config.lambda);
  diag.min_cost = std::numeric_limits<double>::infinity();
  for (int m = 0; m < samples; ++m) {
    if (std::isfinite(costs(m))) diag.min_cost = std::min(diag.min_cost, costs(m));
  }
  diag.effective_sample_size = 1.0 / diag.weights.squaredNorm();
  diag.diverged_rollouts = diverged;

  const int m_dim = config.control_dim();
  Matrix mapping = Matrix::Identity(m_dim, m_dim);
  if (!model.noise_through_controls()) {
    mapping = ControlUpdateMapping(
        ImportanceTermsFromDynamics(model, x0, t0, config.sigma_d));
  }
  result.controls = UpdateControls(state.nominal_controls, diag.weights,
                                   ws.rollouts_, mapping);
  diag.per_step_update_norm.resize(horizon);
  for (int j = 0; j < horizon; ++j) {
    diag.per_step_update_norm(j) =
        (result.controls.controls.row(j) - state.nominal_controls.controls.row(j))
            .norm();
  }
  return result;
}

}  // namespace jump_mppi
