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

// Turns an output-stable learner into an (epsilon, delta)-DP learner whose
// expected output model stays close to the original learner's model.
//
// Pipeline on a sample S_B of size k * m:
//   1. split S_B, in input order, into k disjoint shards of size m;
//   2. train q_i = learner(S_i) on each shard;
//   3. read one coupled sample X_i per shard model off a single shared tape;
//   4. release a private histogram a of S_X = (X_1, ..., X_k);
//   5. output some p with |p(z) - a(z)| <= eta for all z, or the uniform model
//      when no such distribution exists.
// Each input item touches one shard and hence one X_i, and steps after the
// histogram only post-process a, so the whole map S_B -> p is
// (epsilon, delta)-DP.

#ifndef STABILITY_LAB_TRANSFORM_H_
#define STABILITY_LAB_TRANSFORM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "stability_lab/content.h"
#include "stability_lab/coupling.h"
#include "stability_lab/dp_mech.h"
#include "stability_lab/learner.h"

namespace stability_lab {

struct TransformConfig {
  DpParams dp;  // beta == eta
  int64_t m = 0;
  int64_t k = 0;
  int64_t m_priv = 0;  // k * m
  uint64_t learner_seed = 0;

  // k = RequiredK with beta = eta; m_priv = k * m.
  static absl::StatusOr<TransformConfig> Create(double epsilon, double delta,
                                                double eta, int64_t m);
};

// Mean over `trials` of tv(learner(S1), learner(S2)) with S1, S2 independent
// m-samples from `data`.
absl::StatusOr<double> EstimatePremiseAlpha(const Learner& learner,
                                            const DiscreteDistribution& data,
                                            int64_t m, int64_t trials,
                                            uint64_t seed);

// Some p on the simplex with max(0, a(z) - eta) <= p(z) <= min(1, a(z) + eta),
// or nullopt when that box misses the simplex. Starts from a clipped to [0, 1]
// and moves mass in index order within each coordinate's slack.
std::optional<DiscreteDistribution> SimplexProjectLinf(
    DomainPtr domain, absl::Span<const double> a, double eta);

absl::StatusOr<std::vector<DiscreteDistribution>> TrainShardModels(
    const Learner& learner, const Dataset& s_b, const TransformConfig& config);

// S_X: the coupled sample of every shard model read off one tape.
absl::StatusOr<Dataset> CoupledShardSample(
    const CouplingTape& tape, absl::Span<const DiscreteDistribution> models);

struct ReleasedModel {
  DiscreteDistribution model;
  bool fallback;  // projection infeasible, uniform released
};

ReleasedModel ReleaseModel(const NoisyHistogram& a, double eta);

struct TransformTrace {
  std::vector<DiscreteDistribution> shard_models;
  Dataset coupled_sample;
  NoisyHistogram histogram;
  ReleasedModel released;
};

absl::StatusOr<TransformTrace> DpTransformTraced(const Learner& learner,
                                                 const Dataset& s_b,
                                                 const TransformConfig& config,
                                                 uint64_t tape_seed,
                                                 uint64_t noise_seed);

absl::StatusOr<DiscreteDistribution> DpTransform(const Learner& learner,
                                                 const Dataset& s_b,
                                                 const TransformConfig& config,
                                                 uint64_t tape_seed,
                                                 uint64_t noise_seed);

// Steps 3-5 on already-trained shard models.
absl::StatusOr<ReleasedModel> DpTransformFromShards(
    absl::Span<const DiscreteDistribution> shard_models,
    const TransformConfig& config, uint64_t tape_seed, uint64_t noise_seed);

// Slack constant on eta in the reported bound 2a / (1 + a) + C eta.
inline constexpr double kEtaSlackConstant = 5.0;

// x -> 2x / (1 + x).
double StabilityTransferBound(double alpha);

struct Prop1Options {
  int64_t outer_trials = 20;
  int64_t inner_trials = 300;
  int64_t premise_trials = 200;
  uint64_t seed = 0;
};

struct Prop1Report {
  double alpha_hat = 0.0;
  double grand_mean = 0.0;
  double bound = 0.0;            // 2 alpha_hat / (1 + alpha_hat) + C eta
  std::vector<double> trial_tv;  // tv(mean model, q^A) per outer trial
  int64_t fallbacks = 0;         // infeasible projections across all runs
};

// For each outer trial: draw S_A ~ D^m and S_B ~ D^(k m), average
// inner_trials runs of the transform on S_B (fresh tape and noise seeds) into
// a mean model, and record its distance to learner(S_A).
absl::StatusOr<Prop1Report> Prop1Experiment(const Learner& learner,
                                            const DiscreteDistribution& data,
                                            const TransformConfig& config,
                                            const Prop1Options& options);

}  // namespace stability_lab

#endif  // STABILITY_LAB_TRANSFORM_H_
