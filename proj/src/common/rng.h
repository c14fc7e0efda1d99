/* Copyright 2026 The Metamorph Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef METAMORPH_COMMON_RNG_H_
#define METAMORPH_COMMON_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace metamorph {

// SplitMix64 finalizer. Used both as a hash mixer and to expand seeds.
uint64_t Mix64(uint64_t x);

// FNV-1a over the bytes of `text`, then mixed. Stable across platforms.
uint64_t StableHash(std::string_view text);

// Seed for an independent per-item stream: hash(seed, item_id).
uint64_t DeriveSeed(uint64_t seed, std::string_view item_id);

// Seeded generator whose draws are identical on every standard library.
// The std:: distributions are implementation-defined, so all sampling goes
// through the members below rather than <random> distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(Mix64(seed)) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  uint64_t UniformBelow(uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Standard normal via Box-Muller (no cached second value, so the stream
  // position depends only on the number of calls).
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace metamorph

#endif  // METAMORPH_COMMON_RNG_H_
