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

#ifndef STABILITY_LAB_LEARNER_H_
#define STABILITY_LAB_LEARNER_H_

#include <cstdint>
#include <functional>
#include <string>

#include "absl/status/statusor.h"
#include "stability_lab/content.h"

namespace stability_lab {

// A deterministic training rule: the same (dataset, seed) always yields the
// same model.
struct Learner {
  using TrainFn = std::function<absl::StatusOr<DiscreteDistribution>(
      const Dataset&, uint64_t seed)>;

  std::string name;
  TrainFn train;

  absl::StatusOr<DiscreteDistribution> operator()(const Dataset& s,
                                                  uint64_t seed) const {
    return train(s, seed);
  }
};

// Additive smoothing: (count(z) + lambda) / (|S| + lambda |Z|). lambda = 0 is
// the pure memorizer, which rejects an empty dataset.
absl::StatusOr<Learner> EmpiricalLearner(double lambda);

// Ignores its input and always returns q.
Learner ConstantLearner(DiscreteDistribution q);

}  // namespace stability_lab

#endif  // STABILITY_LAB_LEARNER_H_
