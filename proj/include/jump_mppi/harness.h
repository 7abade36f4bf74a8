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

#ifndef JUMP_MPPI_HARNESS_H_
#define JUMP_MPPI_HARNESS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jump_mppi/mppi.h"
#include "jump_mppi/tasks.h"
#include "jump_mppi/thread_pool.h"
#include "jump_mppi/types.h"

namespace jump_mppi {

// Iterations slower than this are flagged (50 Hz control budget).
inline constexpr double kRealTimeBudgetMs = 20.0;

// One closed-loop MPC run.
struct TrialRecord {
  std::string config_id;
  std::uint64_t seed = 0;
  double dt = 0.0;
  RowMatrix states;     // (steps + 1) x n, row k at time k dt
  RowMatrix controls;   // steps x m, executed (clamped) controls
  std::vector<std::uint8_t> plant_jumps;  // steps
  bool success = false;
  int diverged_step = -1;  // plant divergence, -1 if none
  std::vector<double> iteration_ms;
  double mean_iteration_ms() const;
  int overrun_iterations() const;  // iterations above kRealTimeBudgetMs

  int steps() const { return static_cast<int>(controls.rows()); }
};

// Trial seeds: the plant and controller streams of a trial both derive from
// its seed, so two controller variants run with the same seed see identical
// plant disturbances.
std::uint64_t PlantSeed(std::uint64_t trial_seed);
std::uint64_t ControllerSeed(std::uint64_t trial_seed);
std::uint64_t TrialSeed(std::uint64_t base_seed, int trial_index);

struct TrialOptions {
  bool record_timing = true;
  ThreadPool* pool = nullptr;  // parallelizes rollouts inside the trial
  // Called after every controller iteration with the step index.
  std::function<void(int, const IterationResult&)> on_iteration;
};

// Alternates MPPI iteration, execution of u_0 on the plant (always with
// jump noise, independent of the controller's sampler) and warm start for
// task.duration seconds. Plant divergence ends the trial unsuccessfully;
// remaining rows repeat the last finite state.
TrialRecord RunTrial(const TaskSpec& task, const MppiConfig& config,
                     std::uint64_t seed, const TrialOptions& options = {});

// Sum over states and steps of the across-trial unbiased variance. Throws
// std::invalid_argument("variance undefined") for fewer than two trials.
double TotalVariance(const std::vector<RowMatrix>& trajectories);
double TotalVariance(const std::vector<TrialRecord>& records);

struct BatchSummary {
  std::string variant;
  int trials = 0;
  double success_rate = 0.0;
  RowMatrix mean;            // per step, per state
  RowMatrix ci_half_width;   // 1.96 sd / sqrt(trials)
  double total_variance = 0.0;  // NaN for a single trial
  double mean_iteration_ms = 0.0;
  int overrun_iterations = 0;
};

BatchSummary Summarize(const std::string& variant,
                       const std::vector<TrialRecord>& records);

struct ControllerVariant {
  std::string name;  // "old" or "new"
  MppiConfig config;
};

struct VariantBatch {
  BatchSummary summary;
  std::vector<TrialRecord> records;
};

// Runs `trials` paired trials per variant: trial i of every variant uses
// TrialSeed(base_seed, i). Trials run in parallel on `pool`; results are
// identical for any worker count.
std::vector<VariantBatch> RunBatch(const TaskSpec& task,
                                   const std::vector<ControllerVariant>& variants,
                                   int trials, std::uint64_t base_seed,
                                   ThreadPool* pool = nullptr,
                                   bool record_timing = true);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_HARNESS_H_
