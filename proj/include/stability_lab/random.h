/*
 * Copyright 2026 The Stability Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STABILITY_LAB_RANDOM_H_
#define STABILITY_LAB_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace stability_lab {

// SplitMix64 finalizer. Used to decorrelate adjacent seeds.
uint64_t MixSeed(uint64_t x);

// Child seed = stable hash of (root seed, component label, trial index).
// Stable across platforms and runs; independent of scheduling.
uint64_t DeriveSeed(uint64_t root, std::string_view label, uint64_t index);

// Seeded random source. There is no default constructor: every consumer of
// randomness has to be handed a seed, so no global or hidden state exists.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. All variates are computed from raw engine output here rather than
// through <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(MixSeed(seed)) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();

  // Uniform on the open interval (0, 1).
  double UniformOpen();

  // Uniform integer in [0, n). Requires n > 0.
  uint64_t Below(uint64_t n);

  // Unit-rate exponential, strictly positive and finite.
  double Exponential();

  // Geometric on {0, 1, 2, ...} with P(g) = (1 - r) r^g, 0 < r < 1.
  int64_t Geometric(double r);

  // Two-sided geometric with P(g) proportional to r^|g| on the integers.
  int64_t TwoSidedGeometric(double r);

 private:
  std::mt19937_64 engine_;
};

}  // namespace stability_lab

#endif  // STABILITY_LAB_RANDOM_H_
