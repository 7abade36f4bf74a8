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

#ifndef JUMP_MPPI_TYPES_H_
#define JUMP_MPPI_TYPES_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace jump_mppi {

// Time-major (row = time step) storage for controls, states and noise.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Raised when a configuration or task description violates an invariant.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  ConfigError(const std::string& what, std::vector<std::string> violations)
      : std::runtime_error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Raised when a propagated state becomes non-finite.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(int step)
      : std::runtime_error("state diverged at step " + std::to_string(step)),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Raised when every sampled rollout of an iteration has infinite cost.
class NoViableRolloutError : public std::runtime_error {
 public:
  NoViableRolloutError() : std::runtime_error("no viable rollout") {}
};

// Scalar and matrix knobs of one MPPI controller.
//
// Covariances are in control units squared. Scalar values read from config
// files are variances and expand to value * Identity.
struct MppiConfig {
  double lambda = 1.0;        // inverse temperature
  double c = 1.5;             // sampling-variance scale, >= 1
  Matrix sigma_d;             // diffusion noise covariance, m x m
  Matrix sigma_j;             // jump mark covariance, m x m
  double nu = 0.0;            // jump rate [1/s]
  double dt = 0.02;           // [s]
  int horizon_n = 50;         // steps
  int samples_m = 1000;       // rollouts per iteration
  Vector u_init;              // new-slot initialization for warm start
  bool jump_sampling_enabled = true;  // false = diffusion-only sampler

  int control_dim() const { return static_cast<int>(u_init.size()); }
};

// Returns one message per violated invariant; empty when the config is valid.
std::vector<std::string> ConfigViolations(const MppiConfig& config);

// Returns `config` unchanged, or throws ConfigError listing all violations.
MppiConfig ValidateConfig(const MppiConfig& config);

struct ControlSequence {
  RowMatrix controls;  // N x m
  double dt = 0.0;

  int length() const { return static_cast<int>(controls.rows()); }
  int control_dim() const { return static_cast<int>(controls.cols()); }

  // N copies of `u`.
  static ControlSequence Constant(const Vector& u, int horizon, double dt);
};

struct StateTrajectory {
  RowMatrix states;  // (N + 1) x n, row 0 is the initial state
  double dt = 0.0;
};

struct NoiseRealization {
  RowMatrix eps_d;                    // N x m, diffusion draws
  std::vector<std::uint8_t> jump_indicator;  // N, 0 or 1
  RowMatrix eps_j;                    // N x m, zero rows where no jump
  RowMatrix eps_combined;             // eps_d + eps_j

  int length() const { return static_cast<int>(eps_d.rows()); }
  void Resize(int steps, int control_dim);
};

struct RolloutResult {
  StateTrajectory trajectory;
  NoiseRealization noise;
  double cost = 0.0;       // modified trajectory cost, +inf if diverged
  int diverged_step = -1;  // -1 when the rollout stayed finite
};

}  // namespace jump_mppi

#endif  // JUMP_MPPI_TYPES_H_
