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

#ifndef JUMP_MPPI_RNG_H_
#define JUMP_MPPI_RNG_H_

#include <cstdint>
#include <limits>

namespace jump_mppi {

// SplitMix64 finalizer; used for seed derivation only.
std::uint64_t MixSeed(std::uint64_t value);

// Combines two words into a well-mixed 64-bit seed.
std::uint64_t CombineSeeds(std::uint64_t a, std::uint64_t b);

// xoshiro256++ generator. Satisfies UniformRandomBitGenerator so it can be
// used with <random> distributions.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = Rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Counter-based stream handle. A (master_seed, stream_id) pair names a fixed
// draw sequence; distinct ids give independent sequences. Substreams split a
// stream further by purpose (diffusion, jump timer, jump marks).
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  RngStream Substream(std::uint64_t index) const;
  Xoshiro256 Engine() const;
};

}  // namespace jump_mppi

#endif  // JUMP_MPPI_RNG_H_
