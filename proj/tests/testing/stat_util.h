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

// Shared helpers for unit and acceptance tests: statistical acceptance
// checks and random instance generators.

#ifndef STABILITY_LAB_TESTS_TESTING_STAT_UTIL_H_
#define STABILITY_LAB_TESTS_TESTING_STAT_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/types/span.h"
#include "stability_lab/content.h"
#include "stability_lab/random.h"

namespace stability_lab::testing {

// Domain {z0, ..., z(n-1)}.
DomainPtr MakeDomain(size_t n);

// Dies on invalid weights; for literals in tests.
DiscreteDistribution Dist(const DomainPtr& domain, std::vector<double> weights);

// Dirichlet(1, ..., 1) draw. With zero_probability > 0 each coordinate is
// independently zeroed with that probability (at least one stays positive).
DiscreteDistribution RandomDistribution(const DomainPtr& domain, Rng& rng,
                                        double zero_probability = 0.0);

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double critical_value = 0.0;  // upper quantile at the requested level
  bool passes = true;
  // Observed draws in cells with zero expected probability (always a failure).
  int64_t impossible_draws = 0;
};

// Pearson goodness-of-fit of `counts` against `expected` probabilities, at
// significance `level`. Cells with zero expected mass are excluded from the
// statistic but must be empty.
ChiSquareResult ChiSquareTest(absl::Span<const int64_t> counts,
                              absl::Span<const double> expected,
                              double level = 0.001);

// Three binomial standard deviations at success probability b and n trials.
double ThreeSigma(double b, int64_t n);

}  // namespace stability_lab::testing

#endif  // STABILITY_LAB_TESTS_TESTING_STAT_UTIL_H_
