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

// Near-access-freeness: a model p is alpha-NAF with respect to safe models
// {q_c} when p(z) <= e^alpha q_c(z) for every protected content c and every z.

#ifndef STABILITY_LAB_NAF_H_
#define STABILITY_LAB_NAF_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "stability_lab/content.h"
#include "stability_lab/learner.h"

namespace stability_lab {

// Maps each protected content identifier to its safe model q_c. All models
// share one domain and identifiers are unique.
class SafeAssignment {
 public:
  static absl::StatusOr<SafeAssignment> Create(
      std::vector<std::string> ids, std::vector<DiscreteDistribution> models);

  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<DiscreteDistribution>& models() const { return models_; }
  const DiscreteDistribution& model(size_t i) const { return models_[i]; }

  // Returns a copy with (id, model) appended; same checks as Create.
  absl::StatusOr<SafeAssignment> With(std::string id,
                                      DiscreteDistribution model) const;

 private:
  SafeAssignment(std::vector<std::string> ids,
                 std::vector<DiscreteDistribution> models)
      : ids_(std::move(ids)), models_(std::move(models)) {}

  std::vector<std::string> ids_;
  std::vector<DiscreteDistribution> models_;
};

// q_c = learner(S minus one occurrence of c) for each distinct symbol c of S,
// in domain order. Requires |S| >= 2.
absl::StatusOr<SafeAssignment> SafeLeaveOneOut(const Learner& learner,
                                               const Dataset& s, uint64_t seed);

// Seeded random split of S into halves of sizes floor(|S|/2) and the rest.
// Each half keeps the input order of its items.
std::array<Dataset, 2> SplitHalves(const Dataset& s, uint64_t seed);

// Sharded safety: q_c is the model trained on the half that does not contain
// c. A symbol present in both halves gets the model trained on half 0 with
// every occurrence of c removed. Requires |S| >= 2.
absl::StatusOr<SafeAssignment> SafeSharded(const Learner& learner,
                                           const Dataset& s, uint64_t seed);

// Smallest alpha >= 0 with p <= e^alpha q_c pointwise for all c:
// max over c and over z with p(z) > 0 of ln(p(z) / q_c(z)). +inf when some
// q_c vanishes where p does not. 0 for an empty assignment.
absl::StatusOr<double> NafAlpha(const DiscreteDistribution& p,
                                const SafeAssignment& safes);

struct NafViolation {
  std::string content;  // protected content id
  SymbolId z;
  double log_ratio;  // ln(p(z) / q_c(z)), possibly +inf
};

struct NafCheck {
  bool naf;
  std::vector<NafViolation> violations;  // every (c, z) exceeding alpha
};

absl::StatusOr<NafCheck> IsNaf(const DiscreteDistribution& p,
                               const SafeAssignment& safes, double alpha);

// -ln sum_z min_c q_c(z): no distribution can be alpha-NAF for smaller alpha.
absl::StatusOr<double> FeasibilityAlpha(const SafeAssignment& safes);

struct Censorship {
  double alpha;
  std::vector<double> allowed;  // min(1, e^alpha min_c q_c(z))
  double allowed_mass;
  double deficit;  // max(0, 1 - allowed_mass)
};

// Mass an alpha-NAF model must withhold because the safe models jointly give
// it too little room.
absl::StatusOr<Censorship> CensorshipReport(const SafeAssignment& safes,
                                            double alpha);

struct NafReport {
  double alpha;
  double alpha_star;
  std::vector<NafViolation> violations;
  double feasibility_alpha;
  Censorship censorship;
};

absl::StatusOr<NafReport> BuildNafReport(const DiscreteDistribution& p,
                                         const SafeAssignment& safes,
                                         double alpha);

// Tolerance used when checking the no-free-lunch bound.
inline constexpr double kNflTolerance = 1e-12;

struct NflWitness {
  SymbolId z;
  double p_value;    // p(z)
  double threshold;  // min(q1(z), q2(z)) / (2 (1 - tv))
  double tv;         // tv(q1, q2)
  bool holds;        // p_value >= threshold - kNflTolerance
};

// For q1, q2 at total variation tv < 1, every p has some z with
// p(z) >= min(q1(z), q2(z)) / (2 (1 - tv)). Returns the z with the largest
// slack p(z) - threshold(z). Fails with FailedPrecondition when tv == 1, where
// the bound is uninformative.
absl::StatusOr<NflWitness> FindNflWitness(const DiscreteDistribution& p,
                                          const DiscreteDistribution& q1,
                                          const DiscreteDistribution& q2);

// Visits every point (n_1, ..., n_d) with n_i >= 0 and sum n_i = steps, i.e.
// the simplex grid of step 1/steps, in lexicographic order.
void ForEachSimplexGridPoint(
    size_t dimension, int steps,
    const std::function<void(absl::Span<const int>)>& visit);

struct NflGridResult {
  int64_t points = 0;
  int64_t failures = 0;
  double min_slack = 0.0;  // min over p of max_z p(z) - threshold(z)
};

// FindNflWitness for every p on the simplex grid of step 1/steps.
absl::StatusOr<NflGridResult> CheckNflOnGrid(const DiscreteDistribution& q1,
                                             const DiscreteDistribution& q2,
                                             int steps);

}  // namespace stability_lab

#endif  // STABILITY_LAB_NAF_H_
