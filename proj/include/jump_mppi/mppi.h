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

#ifndef JUMP_MPPI_MPPI_H_
#define JUMP_MPPI_MPPI_H_

#include <cstdint>
#include <vector>

#include "jump_mppi/cost.h"
#include "jump_mppi/dynamics.h"
#include "jump_mppi/noise.h"
#include "jump_mppi/thread_pool.h"
#include "jump_mppi/types.h"

namespace jump_mppi {

struct ControllerState {
  ControlSequence nominal_controls;
  std::int64_t iteration_index = 0;
  MppiConfig config;

  // Validates `config` and fills the nominal sequence with u_init.
  static ControllerState Initial(const MppiConfig& config);
};

struct UpdateDiagnostics {
  Vector weights;                // M, sums to 1
  double min_cost = 0.0;
  double effective_sample_size = 0.0;  // 1 / sum w^2
  Vector per_step_update_norm;   // N, |u*_j - u_j|
  int diverged_rollouts = 0;
};

// Softmax weights exp(-(S_m - min S)/lambda), normalized. Infinite costs get
// weight 0. Throws NoViableRolloutError if no cost is finite.
Vector ComputeWeights(const Vector& costs, double lambda);

// sum_m w_m eps_combined[m] per step, accumulated in rollout order.
RowMatrix WeightedPerturbationMean(const Vector& weights,
                                   const std::vector<RolloutResult>& rollouts);

// u*_j = u_j + mapping (sum_m w_m eps_combined[m][j]) / sqrt(dt).
// `mapping` is G~^-1 B~ (m x m); pass identity for control-channel noise.
ControlSequence UpdateControls(const ControllerState& state,
                               const std::vector<RolloutResult>& rollouts,
                               const Matrix& mapping);

// Weight-aware form; skips recomputing the softmax.
ControlSequence UpdateControls(const ControlSequence& nominal,
                               const Vector& weights,
                               const std::vector<RolloutResult>& rollouts,
                               const Matrix& mapping);

// G~^-1 B~, the map from sampled noise to a control correction.
Matrix ControlUpdateMapping(const ImportanceTerms& terms);

// Drops u_0, shifts forward, appends u_init.
ControlSequence WarmStartShift(const ControlSequence& controls,
                               const Vector& u_init);

struct IterationResult {
  ControlSequence controls;
  UpdateDiagnostics diagnostics;
};

// Reusable buffers for MppiIteration. One workspace per control loop.
class MppiWorkspace {
 public:
  std::vector<RolloutResult>& rollouts() { return rollouts_; }
  const std::vector<RolloutResult>& rollouts() const { return rollouts_; }

 private:
  friend IterationResult MppiIteration(const ControllerState&,
                                       const DynamicsModel&, const CostModel&,
                                       const Vector&, std::uint64_t,
                                       MppiWorkspace*, ThreadPool*, double);
  std::vector<RolloutResult> rollouts_;
  std::vector<StepWorkspace> step_ws_;
};

// One sampling-and-update pass. Rollout m of iteration k draws its noise
// from stream (master_seed, k * M + m), so the result depends only on the
// inputs, never on the worker count. Rollouts run on `pool` when given.
IterationResult MppiIteration(const ControllerState& state,
                              const DynamicsModel& model,
                              const CostModel& cost_model, const Vector& x0,
                              std::uint64_t master_seed,
                              MppiWorkspace* workspace = nullptr,
                              ThreadPool* pool = nullptr, double t0 = 0.0);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_MPPI_H_
