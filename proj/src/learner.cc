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

#include "stability_lab/learner.h"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

namespace stability_lab {

absl::StatusOr<Learner> EmpiricalLearner(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("smoothing lambda must be finite and >= 0, got ", lambda));
  }
  Learner learner;
  learner.name = absl::StrCat("empirical(lambda=", lambda, ")");
  learner.train = [lambda](const Dataset& s,
                           uint64_t) -> absl::StatusOr<DiscreteDistribution> {
    const double n = static_cast<double>(s.domain().size());
    const double denom = static_cast<double>(s.size()) + lambda * n;
    if (denom <= 0.0) {
      return absl::InvalidArgumentError(
          "empirical learner without smoothing needs a non-empty dataset");
    }
    std::vector<int64_t> counts = s.Counts();
    std::vector<double> w(counts.size());
    for (size_t z = 0; z < w.size(); ++z) w[z] = (counts[z] + lambda) / denom;
    return DiscreteDistribution::Create(s.domain_ptr(), std::move(w));
  };
  return learner;
}

Learner ConstantLearner(DiscreteDistribution q) {
  Learner learner;
  learner.name = "constant";
  learner.train = [q = std::move(q)](
                      const Dataset& s,
                      uint64_t) -> absl::StatusOr<DiscreteDistribution> {
    if (absl::Status st = CheckSameDomain(s.domain(), q.domain()); !st.ok()) {
      return st;
    }
    return q;
  };
  return learner;
}

}  // namespace stability_lab
