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

#ifndef JUMP_MPPI_NOISE_H_
#define JUMP_MPPI_NOISE_H_

#include <cstdint>
#include <vector>

#include "jump_mppi/rng.h"
#include "jump_mppi/types.h"

namespace jump_mppi {

// Zero-mean Gaussian with a fixed covariance, factorized once.
class GaussianSampler {
 public:
  GaussianSampler() = default;
  // Throws std::invalid_argument("covariance factorization failed") when
  // `covariance` is not symmetric positive definite.
  explicit GaussianSampler(const Matrix& covariance, double scale = 1.0);

  int dim() const { return static_cast<int>(factor_.rows()); }
  const Matrix& factor() const { return factor_; }

  // Writes one draw into out[0..dim).
  void Draw(Xoshiro256& engine, double* out) const;

 private:
  Matrix factor_;  // lower Cholesky factor of scale * covariance
  bool diagonal_ = false;
};

// Substream indices used by MakeNoiseRealization.
enum NoiseSubstream : std::uint64_t {
  kDiffusionSubstream = 0,
  kJumpTimerSubstream = 1,
  kJumpMarkSubstream = 2,
};

// N rows of independent N(0, c * sigma_d) draws.
RowMatrix SampleDiffusion(const RngStream& stream, int n_steps,
                          const Matrix& sigma_d, double c);

// Per step: p ~ U(0,1), jump iff p < nu * dt. Requires nu * dt < 0.1.
std::vector<std::uint8_t> SampleJumpEvents(const RngStream& stream,
                                           int n_steps, double nu, double dt);

// N(0, sigma_j) marks on rows with indicator 1, exact zeros elsewhere.
RowMatrix SampleJumpMarks(const RngStream& stream,
                          const std::vector<std::uint8_t>& indicators,
                          const Matrix& sigma_j);

// All samplers of one controller config, factorized once.
class NoiseSampler {
 public:
  explicit NoiseSampler(const MppiConfig& config);

  // Fills `out` (resized as needed). Jumps are drawn only when the config
  // enables jump sampling; otherwise indicators and eps_j are zero.
  void Sample(const RngStream& stream, int n_steps,
              NoiseRealization& out) const;

  int control_dim() const { return diffusion_.dim(); }

 private:
  GaussianSampler diffusion_;
  GaussianSampler marks_;
  double jump_probability_;
  bool jumps_enabled_;
};

NoiseRealization MakeNoiseRealization(const RngStream& stream,
                                      const MppiConfig& config);

// One step of plant disturbance: N(0, sigma_d) diffusion plus a possible jump.
struct PlantNoiseStep {
  Vector eps_d;
  Vector eps_j;  // zero when `jump` is false
  bool jump = false;
};

// Plant disturbance generator. Jumps are always active. Each step draws from
// its own stream, and the jump timer and mark are drawn every step, so two
// plants with the same seed and different rates share their jump marks and
// the lower-rate jump set is a subset of the higher-rate one.
class PlantNoise {
 public:
  PlantNoise(const Matrix& sigma_d, const Matrix& sigma_j, double nu,
             double dt, std::uint64_t seed, bool enabled = true);

  PlantNoiseStep Sample(int step) const;

 private:
  GaussianSampler diffusion_;
  GaussianSampler marks_;
  double jump_probability_;
  std::uint64_t seed_;
  bool enabled_;
};

}  // namespace jump_mppi

#endif  // JUMP_MPPI_NOISE_H_
