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

#include "stability_lab/coupling.h"

#include <cstdint>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "stability_lab/parallel.h"
#include "stability_lab/random.h"

namespace stability_lab {
namespace {

// Same argmin as CoupledSample without the domain check.
SymbolId RaceWinner(absl::Span<const double> variates,
                    absl::Span<const double> weights) {
  double best = std::numeric_limits<double>::infinity();
  SymbolId winner = 0;
  bool found = false;
  for (size_t z = 0; z < weights.size(); ++z) {
    if (weights[z] <= 0.0) continue;
    const double key = variates[z] / weights[z];
    if (!found || key < best) {
      best = key;
      winner = static_cast<SymbolId>(z);
      found = true;
    }
  }
  return winner;
}

}  // namespace

CouplingTape CouplingTape::Create(DomainPtr domain, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> variates(domain->size());
  for (double& e : variates) e = rng.Exponential();
  return CouplingTape(std::move(domain), seed, std::move(variates));
}

absl::StatusOr<SymbolId> CoupledSample(const CouplingTape& tape,
                                       const DiscreteDistribution& q) {
  if (absl::Status s = CheckSameDomain(tape.domain(), q.domain()); !s.ok()) {
    return s;
  }
  return RaceWinner(tape.variates(), q.weights());
}

absl::StatusOr<double> DisagreementEstimate(const DiscreteDistribution& q,
                                            const DiscreteDistribution& q_prime,
                                            int64_t trials, uint64_t seed) {
  if (absl::Status s = CheckSameDomain(q.domain(), q_prime.domain()); !s.ok()) {
    return s;
  }
  if (trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("trial count must be >= 1, got ", trials));
  }
  std::vector<uint8_t> differ(static_cast<size_t>(trials));
  ParallelFor(differ.size(), [&](size_t t) {
    const CouplingTape tape = CouplingTape::Create(q.domain_ptr(), seed + t);
    differ[t] = RaceWinner(tape.variates(), q.weights()) !=
                RaceWinner(tape.variates(), q_prime.weights());
  });
  int64_t count = 0;
  for (uint8_t d : differ) count += d;
  return static_cast<double>(count) / static_cast<double>(trials);
}

double CouplingDisagreementBound(double tv) { return 2.0 * tv / (1.0 + tv); }

}  // namespace stability_lab
