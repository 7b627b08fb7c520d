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

// Exact (alpha, beta)-DP divergences between two output laws, and a
// thresholded two-sided-geometric histogram that is (epsilon, delta)-DP under
// replacement of one element of its input.

#ifndef STABILITY_LAB_DP_MECH_H_
#define STABILITY_LAB_DP_MECH_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "stability_lab/content.h"

namespace stability_lab {

struct DpParams {
  double epsilon = 1.0;
  double delta = 1e-6;
  double eta = 0.1;   // l-infinity accuracy
  double beta = 0.1;  // failure probability
};

// epsilon > 0 and delta, eta, beta each in (0, 1).
absl::Status ValidateDpParams(const DpParams& params);

// Empirical frequency |{i : S_i = z}| / |S|; 0 for an empty dataset.
double Freq(const Dataset& s, SymbolId z);

// Smallest beta with P(E) <= e^alpha P'(E) + beta for every event E:
// sum_z max(P(z) - e^alpha P'(z), 0).
absl::StatusOr<double> DpBeta(const DiscreteDistribution& p,
                              const DiscreteDistribution& p_prime,
                              double alpha);

// max_E P(E) - e^alpha P'(E) by enumerating all events. Oracle for DpBeta.
absl::StatusOr<EventValue> DpBetaEventForm(const DiscreteDistribution& p,
                                           const DiscreteDistribution& p_prime,
                                           double alpha);

// Both directions: max(DpBeta(P, P'), DpBeta(P', P)).
absl::StatusOr<double> SymmetricDpBeta(const DiscreteDistribution& p,
                                       const DiscreteDistribution& p_prime,
                                       double alpha);

// Constant in the histogram sample size, which is only known up to Omega(.).
inline constexpr double kHistogramSampleConstant = 8.0;

// k = ceil(C ln(1 / (eta beta delta)) / (eta epsilon)) with
// C = kHistogramSampleConstant.
int64_t RequiredK(const DpParams& params);

// Release threshold tau = 2 ln(2 / delta) / (epsilon k) + 1 / k.
double HistogramThreshold(double epsilon, double delta, int64_t k);

struct NoisyHistogram {
  DomainPtr domain;
  std::vector<double> values;  // a(z) in [0, 1]
  double epsilon = 0.0;
  double delta = 0.0;
  int64_t k = 0;
  double tau = 0.0;
};

// For each z present in s, noisy count n(z) = count(z) + G with G two-sided
// geometric of ratio exp(-epsilon / 2); a(z) = clamp(n(z) / k, 0, 1) when
// n(z) / k >= tau, else 0. Absent symbols always get a(z) = 0.
absl::StatusOr<NoisyHistogram> PrivateHistogram(const Dataset& s,
                                                double epsilon, double delta,
                                                uint64_t seed);

// max_z |a(z) - freq_S(z)|.
double HistogramLinfError(const NoisyHistogram& a, const Dataset& s);

// One point of the output law of PrivateHistogram.
struct HistogramOutcome {
  std::vector<double> values;
  double probability;
};

// Exact output law of PrivateHistogram(s, epsilon, delta, .). Tails of the
// noise are summed in closed form, so no mass is truncated.
absl::StatusOr<std::vector<HistogramOutcome>> HistogramOutputLaw(
    const Dataset& s, double epsilon, double delta);

struct HistogramAudit {
  double max_beta = 0.0;  // worst symmetric beta at alpha = epsilon
  int64_t pairs_checked = 0;
  Dataset worst_s;
  Dataset worst_s_prime;
};

// Enumerates every dataset of size k over `domain` and every replacement
// neighbor of it, and computes SymmetricDpBeta(law(S), law(S'), epsilon) from
// the exact output laws. Feasible only for tiny |Z|^k.
absl::StatusOr<HistogramAudit> AuditHistogramPrivacy(DomainPtr domain,
                                                     int64_t k, double epsilon,
                                                     double delta);

}  // namespace stability_lab

#endif  // STABILITY_LAB_DP_MECH_H_
