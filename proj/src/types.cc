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

#include "jump_mppi/types.h"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace jump_mppi {
namespace {

// Zero-one jump law guard: at most 10% jump probability per step.
constexpr double kMaxJumpProbability = 0.1;

void CheckCovariance(const char* name, const Matrix& cov, int m,
                     std::vector<std::string>& out) {
  if (cov.rows() != m || cov.cols() != m) {
    std::ostringstream msg;
    msg << name << " must be " << m << "x" << m << ", got " << cov.rows()
        << "x" << cov.cols();
    out.push_back(msg.str());
    return;
  }
  if (!cov.allFinite()) {
    out.push_back(std::string(name) + " has non-finite entries");
    return;
  }
  double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    out.push_back(std::string(name) + " is not symmetric");
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    out.push_back(std::string(name) + " is not positive definite");
  }
}

}  // namespace

std::vector<std::string> ConfigViolations(const MppiConfig& config) {
  std::vector<std::string> out;
  if (!(config.lambda > 0.0)) out.push_back("lambda must be positive");
  if (!(config.c >= 1.0)) out.push_back("c must be >= 1");
  if (!(config.dt > 0.0)) out.push_back("dt must be positive");
  if (!(config.nu >= 0.0)) out.push_back("nu must be nonnegative");
  if (config.dt > 0.0 && config.nu >= 0.0 &&
      !(config.nu * config.dt < kMaxJumpProbability)) {
    out.push_back("zero-one jump law violated (nu*dt >= 0.1)");
  }
  if (config.horizon_n < 1) out.push_back("horizon_n must be positive");
  if (config.samples_m < 1) out.push_back("samples_m must be positive");
  int m = config.control_dim();
  if (m < 1) {
    out.push_back("u_init must be non-empty");
    return out;
  }
  if (!config.u_init.allFinite()) out.push_back("u_init has non-finite entries");
  CheckCovariance("sigma_d", config.sigma_d, m, out);
  CheckCovariance("sigma_j", config.sigma_j, m, out);
  return out;
}

MppiConfig ValidateConfig(const MppiConfig& config) {
  auto violations = ConfigViolations(config);
  if (!violations.empty()) {
    std::string what = "invalid MPPI config:";
    for (const auto& v : violations) what += " " + v + ";";
    throw ConfigError(what, std::move(violations));
  }
  return config;
}

ControlSequence ControlSequence::Constant(const Vector& u, int horizon,
                                          double dt) {
  ControlSequence seq;
  seq.dt = dt;
  seq.controls.resize(horizon, u.size());
  for (int i = 0; i < horizon; ++i) seq.controls.row(i) = u.transpose();
  return seq;
}

void NoiseRealization::Resize(int steps, int control_dim) {
  eps_d.setZero(steps, control_dim);
  eps_j.setZero(steps, control_dim);
  eps_combined.setZero(steps, control_dim);
  jump_indicator.assign(steps, 0);
}

}  // namespace jump_mppi
