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

#include "jump_mppi/harness.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jump_mppi/mppi.h"
#include "jump_mppi/noise.h"

namespace jump_mppi {
namespace {

constexpr std::uint64_t kPlantTag = 0x706c616e74ULL;       // "plant"
constexpr std::uint64_t kControllerTag = 0x6374726cULL;    // "ctrl"

}  // namespace

double TrialRecord::mean_iteration_ms() const {
  if (iteration_ms.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (double ms : iteration_ms) total += ms;
  return total / static_cast<double>(iteration_ms.size());
}

int TrialRecord::overrun_iterations() const {
  int count = 0;
  for (double ms : iteration_ms) count += ms > kRealTimeBudgetMs;
  return count;
}

std::uint64_t PlantSeed(std::uint64_t trial_seed) {
  return CombineSeeds(trial_seed, kPlantTag);
}

std::uint64_t ControllerSeed(std::uint64_t trial_seed) {
  return CombineSeeds(trial_seed, kControllerTag);
}

std::uint64_t TrialSeed(std::uint64_t base_seed, int trial_index) {
  return CombineSeeds(base_seed, static_cast<std::uint64_t>(trial_index));
}

TrialRecord RunTrial(const TaskSpec& task, const MppiConfig& config,
                     std::uint64_t seed, const TrialOptions& options) {
  const DynamicsModel& model = *task.model;
  ControllerState state = ControllerState::Initial(config);
  CostModel cost = MakeCostModel(task, config);
  PlantNoise plant(config.sigma_d, config.sigma_j, config.nu, config.dt,
                   PlantSeed(seed), task.plant_noise);
  const std::uint64_t controller_seed = ControllerSeed(seed);
  const double dt = config.dt;
  const int steps = static_cast<int>(std::lround(task.duration / dt));
  const int n = model.state_dim();
  const int m = model.control_dim();

  TrialRecord record;
  record.seed = seed;
  record.dt = dt;
  record.states.resize(steps + 1, n);
  record.controls.setZero(steps, m);
  record.plant_jumps.assign(steps, 0);
  if (options.record_timing) record.iteration_ms.reserve(steps);
  record.states.row(0) = task.initial_state.transpose();

  MppiWorkspace workspace;
  StepWorkspace step_ws;
  Vector x = task.initial_state;
  Vector next(n);
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    auto start = std::chrono::steady_clock::now();
    IterationResult iteration;
    try {
      iteration = MppiIteration(state, model, cost, x, controller_seed,
                                &workspace, options.pool, t);
    } catch (const NoViableRolloutError&) {
      // Keep the previous plan when every sample diverged.
      iteration.controls = state.nominal_controls;
    }
    if (options.record_timing) {
      auto stop = std::chrono::steady_clock::now();
      record.iteration_ms.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());
    }
    if (options.on_iteration) options.on_iteration(k, iteration);

    Vector u = iteration.controls.controls.row(0).transpose();
    model.Clamp(u);
    PlantNoiseStep disturbance = plant.Sample(k);
    record.controls.row(k) = u.transpose();
    record.plant_jumps[k] = disturbance.jump;
    bool ok = StepInto(model, x, u, disturbance.eps_d, disturbance.eps_j,
                       disturbance.jump, dt, t, step_ws, next);
    if (!ok) {
      record.diverged_step = k;
      for (int r = k + 1; r <= steps; ++r) record.states.row(r) = x.transpose();
      break;
    }
    x = next;
    record.states.row(k + 1) = x.transpose();

    state.nominal_controls = WarmStartShift(iteration.controls, config.u_init);
    ++state.iteration_index;
  }
  record.success =
      record.diverged_step < 0 && SuccessPredicate(task, record.states, dt);
  return record;
}

double TotalVariance(const std::vector<RowMatrix>& trajectories) {
  if (trajectories.size() < 2) throw std::invalid_argument("variance undefined");
  const auto rows = trajectories.front().rows();
  const auto cols = trajectories.front().cols();
  RowMatrix mean = RowMatrix::Zero(rows, cols);
  for (const auto& t : trajectories) {
    if (t.rows() != rows || t.cols() != cols) {
      throw std::invalid_argument("trajectory lengths differ");
    }
    mean += t;
  }
  const double count = static_cast<double>(trajectories.size());
  mean /= count;
  double sum_sq = 0.0;
  for (const auto& t : trajectories) sum_sq += (t - mean).squaredNorm();
  return sum_sq / (count - 1.0);
}

double TotalVariance(const std::vector<TrialRecord>& records) {
  std::vector<RowMatrix> trajectories;
  trajectories.reserve(records.size());
  for (const auto& r : records) trajectories.push_back(r.states);
  return TotalVariance(trajectories);
}

BatchSummary Summarize(const std::string& variant,
                       const std::vector<TrialRecord>& records) {
  BatchSummary summary;
  summary.variant = variant;
  summary.trials = static_cast<int>(records.size());
  if (records.empty()) return summary;
  const auto rows = records.front().states.rows();
  const auto cols = records.front().states.cols();
  const double count = static_cast<double>(records.size());
  int successes = 0;
  summary.mean = RowMatrix::Zero(rows, cols);
  for (const auto& r : records) {
    successes += r.success;
    summary.mean += r.states;
  }
  summary.mean /= count;
  summary.success_rate = successes / count;
  summary.ci_half_width = RowMatrix::Zero(rows, cols);
  if (records.size() >= 2) {
    RowMatrix sum_sq = RowMatrix::Zero(rows, cols);
    for (const auto& r : records) {
      sum_sq += (r.states - summary.mean).cwiseAbs2();
    }
    RowMatrix sd = (sum_sq / (count - 1.0)).cwiseSqrt();
    summary.ci_half_width = 1.96 * sd / std::sqrt(count);
    summary.total_variance = TotalVariance(records);
  } else {
    summary.total_variance = std::numeric_limits<double>::quiet_NaN();
  }
  double timing_total = 0.0;
  std::size_t timing_count = 0;
  for (const auto& r : records) {
    for (double ms : r.iteration_ms) timing_total += ms;
    timing_count += r.iteration_ms.size();
    summary.overrun_iterations += r.overrun_iterations();
  }
  summary.mean_iteration_ms =
      timing_count ? timing_total / static_cast<double>(timing_count)
                   : std::numeric_limits<double>::quiet_NaN();
  return summary;
}

std::vector<VariantBatch> RunBatch(
    const TaskSpec& task, const std::vector<ControllerVariant>& variants,
    int trials, std::uint64_t base_seed, ThreadPool* pool,
    bool record_timing) {
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  const int jobs = trials * static_cast<int>(variants.size());
  std::vector<TrialRecord> results(jobs);
  ParallelFor(pool, jobs, [&](int job, int) {
    const int v = job / trials;
    const int i = job % trials;
    TrialOptions options;
    options.record_timing = record_timing;
    results[job] = RunTrial(task, variants[v].config, TrialSeed(base_seed, i),
                            options);
    results[job].config_id = variants[v].name;
  });
  std::vector<VariantBatch> out;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    VariantBatch batch;
    batch.records.assign(
        std::make_move_iterator(results.begin() + v * trials),
        std::make_move_iterator(results.begin() + (v + 1) * trials));
    batch.summary = Summarize(variants[v].name, batch.records);
    out.push_back(std::move(batch));
  }
  return out;
}

}  // namespace jump_mppi
