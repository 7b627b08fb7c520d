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

// Shared-randomness coupling of every distribution over a finite domain.
//
// A tape holds one unit-rate exponential E_z per symbol. The coupled sample
// for a model q is the winner of the exponential race, argmin_z E_z / q(z):
// E_z / q(z) is Exp(q(z)), so the winner has law q, and two models q, q' read
// off the same tape disagree with probability at most 2 d / (1 + d) where d is
// their total variation distance.

#ifndef STABILITY_LAB_COUPLING_H_
#define STABILITY_LAB_COUPLING_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "stability_lab/content.h"

namespace stability_lab {

class CouplingTape {
 public:
  // Depends only on (domain, seed). No dataset is involved, so the tape is
  // independent of any training data by construction.
  static CouplingTape Create(DomainPtr domain, uint64_t seed);

  const ContentDomain& domain() const { return *domain_; }
  uint64_t seed() const { return seed_; }
  absl::Span<const double> variates() const { return variates_; }

 private:
  CouplingTape(DomainPtr domain, uint64_t seed, std::vector<double> variates)
      : domain_(std::move(domain)),
        seed_(seed),
        variates_(std::move(variates)) {}

  DomainPtr domain_;
  uint64_t seed_;
  std::vector<double> variates_;
};

// argmin over the support of q of E_z / q(z); ties go to the lowest index.
absl::StatusOr<SymbolId> CoupledSample(const CouplingTape& tape,
                                       const DiscreteDistribution& q);

// Fraction of `trials` fresh tapes (seeds seed, seed + 1, ...) on which the
// coupled samples of q and q_prime differ.
absl::StatusOr<double> DisagreementEstimate(const DiscreteDistribution& q,
                                            const DiscreteDistribution& q_prime,
                                            int64_t trials, uint64_t seed);

// The pairwise guarantee 2 d / (1 + d) at total variation d.
double CouplingDisagreementBound(double tv);

}  // namespace stability_lab

#endif  // STABILITY_LAB_COUPLING_H_
