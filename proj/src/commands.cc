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

#include "jump_mppi/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include "jump_mppi/csv.h"
#include "jump_mppi/harness.h"
#include "jump_mppi/mppi.h"
#include "jump_mppi/thread_pool.h"

namespace jump_mppi {
namespace {

namespace fs = std::filesystem;

std::string CellLabel(const SweepCell& cell) {
  std::ostringstream out;
  out << "nu" << cell.nu << "_sj" << cell.sigma_j << "_m" << cell.samples_m;
  return out.str();
}

std::vector<ControllerVariant> MakeVariants(const ExperimentConfig& config,
                                            const TaskSpec& task,
                                            const SweepCell& cell) {
  std::vector<ControllerVariant> variants;
  for (const std::string& name : SelectedVariants(config)) {
    variants.push_back({name, BuildMppiConfig(config, task, cell, name == "new")});
  }
  return variants;
}

fs::path PrepareOutputDir(const ExperimentConfig& config) {
  fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" +
                             config.output_dir + "': " + ec.message());
  }
  return dir;
}

double Percentile(std::vector<double> sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void ApplyOverrides(const CommandOverrides& overrides,
                    ExperimentConfig& config) {
  if (overrides.trials) config.trials = *overrides.trials;
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.output_dir) config.output_dir = *overrides.output_dir;
  if (overrides.variant) config.variant = *overrides.variant;
  CheckExperimentConfig(config);
}

int RunSweepCommand(const ExperimentConfig& config, std::ostream& log) {
  TaskSpec task = BuildTask(config);
  std::vector<SweepCell> cells = SweepCells(config);
  // Validate every cell before spending time on trials.
  for (const SweepCell& cell : cells) MakeVariants(config, task, cell);

  fs::path dir = PrepareOutputDir(config);
  ThreadPool pool(DefaultThreadCount());
  CsvWriter summary((dir / "summary.csv").string(), SummaryHeader());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const SweepCell& cell = cells[c];
    std::vector<ControllerVariant> variants = MakeVariants(config, task, cell);
    std::vector<VariantBatch> batches = RunBatch(
        task, variants, config.trials, config.seed, &pool, config.record_timing);
    for (const VariantBatch& batch : batches) {
      const BatchSummary& s = batch.summary;
      SummaryRow row{task.name,
                     s.variant,
                     cell.nu,
                     cell.sigma_j,
                     cell.samples_m,
                     s.trials,
                     s.success_rate,
                     s.total_variance,
                     config.record_timing
                         ? s.mean_iteration_ms
                         : std::numeric_limits<double>::quiet_NaN(),
                     config.seed};
      summary.Row({row.task, row.variant, FormatReal(row.nu),
                   FormatReal(row.sigma_j), std::to_string(row.samples_m),
                   std::to_string(row.trials), FormatReal(row.success_rate),
                   FormatReal(row.total_variance), FormatReal(row.mean_iter_ms),
                   std::to_string(row.seed)});
      summary.Flush();
      WriteTrajectoryCsv(
          (dir / ("traj_" + CellLabel(cell) + "_" + s.variant + ".csv")).string(),
          batch.records, task.model->state_names(), task.model->control_names());
      log << "[" << c + 1 << "/" << cells.size() << "] " << CellLabel(cell)
          << " " << s.variant << ": success " << s.success_rate * 100.0
          << "%, total variance " << s.total_variance;
      if (config.record_timing) {
        log << ", mean iteration " << s.mean_iteration_ms << " ms";
        if (s.overrun_iterations > 0) {
          log << " (" << s.overrun_iterations << " iterations over "
              << kRealTimeBudgetMs << " ms)";
        }
      }
      log << "\n";
    }
  }
  return kExitOk;
}

int SingleCommand(const ExperimentConfig& config, std::ostream& log) {
  TaskSpec task = BuildTask(config);
  const SweepCell cell = SweepCells(config).front();
  std::vector<ControllerVariant> variants = MakeVariants(config, task, cell);
  fs::path dir = PrepareOutputDir(config);
  ThreadPool pool(DefaultThreadCount());

  std::vector<std::string> header = {"step", "t"};
  for (const auto& name : task.model->state_names()) header.push_back(name);
  for (const auto& name : task.model->control_names()) header.push_back(name);
  for (const char* name : {"jump_indicator", "min_cost", "ess",
                           "diverged_rollouts", "iter_ms"}) {
    header.push_back(name);
  }

  for (const ControllerVariant& variant : variants) {
    std::vector<UpdateDiagnostics> diagnostics;
    TrialOptions options;
    options.record_timing = config.record_timing;
    options.pool = &pool;
    options.on_iteration = [&](int, const IterationResult& it) {
      diagnostics.push_back(it.diagnostics);
    };
    TrialRecord rec = RunTrial(task, variant.config, config.seed, options);

    CsvWriter out((dir / ("single_" + variant.name + ".csv")).string(), header);
    std::vector<std::string> fields;
    for (int k = 0; k < rec.steps(); ++k) {
      fields = {std::to_string(k), FormatReal(k * rec.dt)};
      for (int i = 0; i < rec.states.cols(); ++i) {
        fields.push_back(FormatReal(rec.states(k, i)));
      }
      for (int i = 0; i < rec.controls.cols(); ++i) {
        fields.push_back(FormatReal(rec.controls(k, i)));
      }
      const UpdateDiagnostics& d = diagnostics[k];
      fields.push_back(std::to_string(static_cast<int>(rec.plant_jumps[k])));
      fields.push_back(FormatReal(d.min_cost));
      fields.push_back(FormatReal(d.effective_sample_size));
      fields.push_back(std::to_string(d.diverged_rollouts));
      fields.push_back(FormatReal(
          config.record_timing ? rec.iteration_ms[k]
                               : std::numeric_limits<double>::quiet_NaN()));
      out.Row(fields);
    }
    out.Flush();
    log << variant.name << ": " << (rec.success ? "success" : "failure");
    if (rec.diverged_step >= 0) log << " (plant diverged at step " << rec.diverged_step << ")";
    log << "\n";
  }
  return kExitOk;
}

int ValidateCommand(const ExperimentConfig& config, std::ostream& log) {
  TaskSpec task = BuildTask(config);
  std::vector<SweepCell> cells = SweepCells(config);
  int checked = 0;
  for (const SweepCell& cell : cells) {
    for (const ControllerVariant& variant : MakeVariants(config, task, cell)) {
      const MppiConfig& mc = variant.config;
      CostModel cost = MakeCostModel(task, mc);
      // Noise-free rollout of the initial plan must stay finite.
      ControlSequence plan =
          ControlSequence::Constant(mc.u_init, mc.horizon_n, mc.dt);
      RolloutResult rollout;
      rollout.noise.Resize(mc.horizon_n, task.model->control_dim());
      StepWorkspace ws;
      RolloutInPlace(*task.model, task.initial_state, plan, cost, 0.0, ws,
                     rollout);
      if (!std::isfinite(rollout.cost)) {
        throw std::runtime_error("self-check failed: nominal rollout diverges");
      }
      Vector w = ComputeWeights(
          (Vector(3) << rollout.cost, rollout.cost + 1.0, rollout.cost).finished(),
          mc.lambda);
      if (std::abs(w.sum() - 1.0) > 1e-12) {
        throw std::runtime_error("self-check failed: weights not normalized");
      }
      ++checked;
    }
  }
  log << "config ok: task " << task.name << ", " << cells.size()
      << " cells, " << checked << " controller configs checked\n";
  return kExitOk;
}

int BenchCommand(const ExperimentConfig& config, std::ostream& log) {
  TaskSpec task = BuildTask(config);
  const SweepCell cell = SweepCells(config).front();
  const MppiConfig mc = BuildMppiConfig(config, task, cell, true);
  const DynamicsModel& model = *task.model;
  CostModel cost = MakeCostModel(task, mc);
  ThreadPool pool(DefaultThreadCount());
  MppiWorkspace workspace;
  StepWorkspace step_ws;
  ControllerState state = ControllerState::Initial(mc);
  PlantNoise plant(mc.sigma_d, mc.sigma_j, mc.nu, mc.dt, PlantSeed(config.seed),
                   task.plant_noise);
  Vector x = task.initial_state;
  Vector next(x.size());

  std::vector<double> times;
  times.reserve(config.bench_iterations);
  for (int k = 0; k < config.bench_iterations; ++k) {
    auto start = std::chrono::steady_clock::now();
    IterationResult it = MppiIteration(state, model, cost, x,
                                       ControllerSeed(config.seed), &workspace,
                                       &pool, k * mc.dt);
    auto stop = std::chrono::steady_clock::now();
    times.push_back(
        std::chrono::duration<double, std::milli>(stop - start).count());
    Vector u = it.controls.controls.row(0).transpose();
    model.Clamp(u);
    PlantNoiseStep d = plant.Sample(k);
    if (StepInto(model, x, u, d.eps_d, d.eps_j, d.jump, mc.dt, k * mc.dt,
                 step_ws, next)) {
      x = next;
    } else {
      x = task.initial_state;  // restart the episode, keep timing
    }
    state.nominal_controls = WarmStartShift(it.controls, mc.u_init);
    ++state.iteration_index;
  }

  fs::path dir = PrepareOutputDir(config);
  CsvWriter out((dir / "bench.csv").string(), {"iteration", "iter_ms"});
  for (std::size_t k = 0; k < times.size(); ++k) {
    out.Row({std::to_string(k), FormatReal(times[k])});
  }
  out.Flush();

  const double median = Percentile(times, 0.5);
  const int over = static_cast<int>(std::count_if(
      times.begin(), times.end(), [](double t) { return t > kRealTimeBudgetMs; }));
  log << "task " << task.name << ", M=" << mc.samples_m << ", N=" << mc.horizon_n
      << ", threads " << pool.size() << "\n"
      << "iterations " << times.size() << "\n"
      << "median_ms " << median << "\n"
      << "p90_ms " << Percentile(times, 0.9) << "\n"
      << "max_ms " << *std::max_element(times.begin(), times.end()) << "\n"
      << "over_budget " << over << "\n";
  if (median > kRealTimeBudgetMs) {
    log << "warning: median iteration exceeds the " << kRealTimeBudgetMs
        << " ms budget on this machine\n";
  }
  return kExitOk;
}

int RunCommand(const std::string& command, const std::string& config_path,
               const CommandOverrides& overrides, std::ostream& log,
               std::ostream& err) {
  try {
    ExperimentConfig config = LoadConfig(config_path);
    ApplyOverrides(overrides, config);
    if (command == "run") return RunSweepCommand(config, log);
    if (command == "single") return SingleCommand(config, log);
    if (command == "validate") return ValidateCommand(config, log);
    if (command == "bench") return BenchCommand(config, log);
    err << "error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace jump_mppi
