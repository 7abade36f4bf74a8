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

#include "jump_mppi/noise.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace jump_mppi {
namespace {

constexpr double kMaxJumpProbability = 0.1;

void CheckJumpProbability(double nu, double dt) {
  if (!(nu >= 0.0) || !(dt > 0.0) || !(nu * dt < kMaxJumpProbability)) {
    throw std::invalid_argument("zero-one jump law violated (nu*dt >= 0.1)");
  }
}

}  // namespace

GaussianSampler::GaussianSampler(const Matrix& covariance, double scale) {
  if (covariance.rows() != covariance.cols() || covariance.rows() == 0 ||
      !covariance.allFinite() || !(scale > 0.0)) {
    throw std::invalid_argument("covariance factorization failed");
  }
  Matrix scaled = scale * covariance;
  Eigen::LLT<Matrix> llt(scaled);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance factorization failed");
  }
  factor_ = llt.matrixL();
  Matrix off = factor_;
  off.diagonal().setZero();
  diagonal_ = off.isZero(0.0);
}

void GaussianSampler::Draw(Xoshiro256& engine, double* out) const {
  std::normal_distribution<double> normal;
  const int m = dim();
  if (diagonal_) {
    for (int i = 0; i < m; ++i) out[i] = factor_(i, i) * normal(engine);
    return;
  }
  double z[16];
  Vector big;
  double* zp = z;
  if (m > 16) {
    big.resize(m);
    zp = big.data();
  }
  for (int i = 0; i < m; ++i) zp[i] = normal(engine);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) acc += factor_(i, k) * zp[k];
    out[i] = acc;
  }
}

RowMatrix SampleDiffusion(const RngStream& stream, int n_steps,
                          const Matrix& sigma_d, double c) {
  GaussianSampler sampler(sigma_d, c);
  RowMatrix out(n_steps, sampler.dim());
  Xoshiro256 engine = stream.Engine();
  for (int j = 0; j < n_steps; ++j) sampler.Draw(engine, out.row(j).data());
  return out;
}

std::vector<std::uint8_t> SampleJumpEvents(const RngStream& stream,
                                           int n_steps, double nu, double dt) {
  CheckJumpProbability(nu, dt);
  const double p_jump = nu * dt;
  std::vector<std::uint8_t> out(n_steps, 0);
  Xoshiro256 engine = stream.Engine();
  for (int j = 0; j < n_steps; ++j) out[j] = engine.Uniform() < p_jump;
  return out;
}

RowMatrix SampleJumpMarks(const RngStream& stream,
                          const std::vector<std::uint8_t>& indicators,
                          const Matrix& sigma_j) {
  GaussianSampler sampler(sigma_j);
  const int n = static_cast<int>(indicators.size());
  RowMatrix out = RowMatrix::Zero(n, sampler.dim());
  Xoshiro256 engine = stream.Engine();
  for (int j = 0; j < n; ++j) {
    if (indicators[j]) sampler.Draw(engine, out.row(j).data());
  }
  return out;
}

NoiseSampler::NoiseSampler(const MppiConfig& config)
    : diffusion_(config.sigma_d, config.c),
      marks_(config.sigma_j),
      jump_probability_(config.nu * config.dt),
      jumps_enabled_(config.jump_sampling_enabled) {
  if (diffusion_.dim() != marks_.dim()) {
    throw std::invalid_argument("sigma_d and sigma_j dimensions differ");
  }
  CheckJumpProbability(config.nu, config.dt);
}

void NoiseSampler::Sample(const RngStream& stream, int n_steps,
                          NoiseRealization& out) const {
  const int m = diffusion_.dim();
  if (out.length() != n_steps || out.eps_d.cols() != m) {
    out.Resize(n_steps, m);
  }
  Xoshiro256 diffusion = stream.Substream(kDiffusionSubstream).Engine();
  for (int j = 0; j < n_steps; ++j) {
    diffusion_.Draw(diffusion, out.eps_d.row(j).data());
  }
  out.eps_j.setZero();
  std::fill(out.jump_indicator.begin(), out.jump_indicator.end(), 0);
  if (jumps_enabled_ && jump_probability_ > 0.0) {
    Xoshiro256 timer = stream.Substream(kJumpTimerSubstream).Engine();
    Xoshiro256 marks = stream.Substream(kJumpMarkSubstream).Engine();
    for (int j = 0; j < n_steps; ++j) {
      if (timer.Uniform() < jump_probability_) {
        out.jump_indicator[j] = 1;
        marks_.Draw(marks, out.eps_j.row(j).data());
      }
    }
  }
  out.eps_combined = out.eps_d + out.eps_j;
}

NoiseRealization MakeNoiseRealization(const RngStream& stream,
                                      const MppiConfig& config) {
  NoiseRealization out;
  NoiseSampler(config).Sample(stream, config.horizon_n, out);
  return out;
}

PlantNoise::PlantNoise(const Matrix& sigma_d, const Matrix& sigma_j,
                       double nu, double dt, std::uint64_t seed, bool enabled)
    : diffusion_(sigma_d),
      marks_(sigma_j),
      jump_probability_(nu * dt),
      seed_(seed),
      enabled_(enabled) {
  CheckJumpProbability(nu, dt);
  if (diffusion_.dim() != marks_.dim()) {
    throw std::invalid_argument("sigma_d and sigma_j dimensions differ");
  }
}

PlantNoiseStep PlantNoise::Sample(int step) const {
  const int m = diffusion_.dim();
  PlantNoiseStep out;
  out.eps_d = Vector::Zero(m);
  out.eps_j = Vector::Zero(m);
  if (!enabled_) return out;
  RngStream stream{seed_, static_cast<std::uint64_t>(step)};
  Xoshiro256 diffusion = stream.Substream(kDiffusionSubstream).Engine();
  diffusion_.Draw(diffusion, out.eps_d.data());
  Xoshiro256 jumps = stream.Substream(kJumpTimerSubstream).Engine();
  const double p = jumps.Uniform();
  Vector mark(m);
  marks_.Draw(jumps, mark.data());
  if (p < jump_probability_) {
    out.jump = true;
    out.eps_j = mark;
  }
  return out;
}

}  // namespace jump_mppi
