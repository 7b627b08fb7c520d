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

#include "stability_lab/random.h"

#include <cmath>
#include <cstdint>
#include <string_view>

namespace stability_lab {

uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t root, std::string_view label, uint64_t index) {
  // FNV-1a over the label.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return MixSeed(MixSeed(root ^ h) + MixSeed(index + 0x632be59bd9b4e019ULL));
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::UniformOpen() {
  return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

uint64_t Rng::Below(uint64_t n) {
  // Rejection sampling on the largest multiple of n.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::Exponential() { return -std::log(UniformOpen()); }

int64_t Rng::Geometric(double r) {
  // P(G >= t) = P(U <= r^t) = r^t.
  return static_cast<int64_t>(
      std::floor(std::log(UniformOpen()) / std::log(r)));
}

int64_t Rng::TwoSidedGeometric(double r) { return Geometric(r) - Geometric(r); }

}  // namespace stability_lab
