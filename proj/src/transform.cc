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

#include "stability_lab/transform.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/types/span.h"
#include "stability_lab/parallel.h"
#include "stability_lab/random.h"

namespace stability_lab {
namespace {

constexpr double kBoxTolerance = 1e-12;

}  // namespace

absl::StatusOr<TransformConfig> TransformConfig::Create(double epsilon,
                                                        double delta,
                                                        double eta, int64_t m) {
  TransformConfig config;
  config.dp = DpParams{epsilon, delta, eta, eta};
  if (absl::Status s = ValidateDpParams(config.dp); !s.ok()) return s;
  if (m < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("shard size m must be >= 1, got ", m));
  }
  config.m = m;
  config.k = RequiredK(config.dp);
  config.m_priv = config.k * m;
  return config;
}

absl::StatusOr<double> EstimatePremiseAlpha(const Learner& learner,
                                            const DiscreteDistribution& data,
                                            int64_t m, int64_t trials,
                                            uint64_t seed) {
  if (trials < 1 || m < 1) {
    return absl::InvalidArgumentError("premise estimate needs trials, m >= 1");
  }
  std::vector<absl::StatusOr<double>> tv(static_cast<size_t>(trials),
                                         absl::UnknownError("not evaluated"));
  ParallelFor(tv.size(), [&](size_t t) {
    Rng rng(DeriveSeed(seed, "premise/sample", t));
    const Dataset s1 = SampleDataset(data, static_cast<size_t>(m), rng);
    const Dataset s2 = SampleDataset(data, static_cast<size_t>(m), rng);
    absl::StatusOr<DiscreteDistribution> q1 =
        learner(s1, DeriveSeed(seed, "premise/learner", 2 * t));
    absl::StatusOr<DiscreteDistribution> q2 =
        learner(s2, DeriveSeed(seed, "premise/learner", 2 * t + 1));
    if (!q1.ok()) {
      tv[t] = q1.status();
    } else if (!q2.ok()) {
      tv[t] = q2.status();
    } else {
      tv[t] = TvDistance(*q1, *q2);
    }
  });
  double sum = 0.0;
  for (const absl::StatusOr<double>& d : tv) {
    if (!d.ok()) return d.status();
    sum += *d;
  }
  return sum / static_cast<double>(trials);
}

std::optional<DiscreteDistribution> SimplexProjectLinf(
    DomainPtr domain, absl::Span<const double> a, double eta) {
  const size_t n = a.size();
  std::vector<double> lower(n), upper(n), p(n);
  double lower_sum = 0.0, upper_sum = 0.0, sum = 0.0;
  for (size_t z = 0; z < n; ++z) {
    lower[z] = std::max(0.0, a[z] - eta);
    upper[z] = std::min(1.0, a[z] + eta);
    if (lower[z] > upper[z]) return std::nullopt;
    p[z] = std::clamp(a[z], lower[z], upper[z]);
    lower_sum += lower[z];
    upper_sum += upper[z];
    sum += p[z];
  }
  if (lower_sum > 1.0 + kBoxTolerance || upper_sum < 1.0 - kBoxTolerance) {
    return std::nullopt;
  }
  if (sum < 1.0) {
    double missing = 1.0 - sum;
    for (size_t z = 0; z < n && missing > 0.0; ++z) {
      const double add = std::min(upper[z] - p[z], missing);
      p[z] += add;
      missing -= add;
    }
  } else if (sum > 1.0) {
    double excess = sum - 1.0;
    for (size_t z = 0; z < n && excess > 0.0; ++z) {
      const double cut = std::min(p[z] - lower[z], excess);
      p[z] -= cut;
      excess -= cut;
    }
  }
  absl::StatusOr<DiscreteDistribution> out =
      DiscreteDistribution::Create(std::move(domain), std::move(p));
  if (!out.ok()) return std::nullopt;
  return *std::move(out);
}

absl::StatusOr<std::vector<DiscreteDistribution>> TrainShardModels(
    const Learner& learner, const Dataset& s_b, const TransformConfig& config) {
  if (static_cast<int64_t>(s_b.size()) != config.m_priv) {
    return absl::InvalidArgumentError(
        absl::StrCat("size mismatch: transform expects k * m = ", config.m_priv,
                     " items, got ", s_b.size()));
  }
  std::vector<DiscreteDistribution> models;
  models.reserve(static_cast<size_t>(config.k));
  const size_t m = static_cast<size_t>(config.m);
  for (int64_t i = 0; i < config.k; ++i) {
    absl::StatusOr<DiscreteDistribution> q =
        learner(s_b.Slice(static_cast<size_t>(i) * m, m),
                DeriveSeed(config.learner_seed, "shard", i));
    if (!q.ok()) return q.status();
    models.push_back(*std::move(q));
  }
  return models;
}

absl::StatusOr<Dataset> CoupledShardSample(
    const CouplingTape& tape, absl::Span<const DiscreteDistribution> models) {
  std::vector<SymbolId> items;
  items.reserve(models.size());
  for (const DiscreteDistribution& q : models) {
    absl::StatusOr<SymbolId> x = CoupledSample(tape, q);
    if (!x.ok()) return x.status();
    items.push_back(*x);
  }
  return Dataset(models.empty() ? nullptr : models[0].domain_ptr(),
                 std::move(items));
}

ReleasedModel ReleaseModel(const NoisyHistogram& a, double eta) {
  std::optional<DiscreteDistribution> p =
      SimplexProjectLinf(a.domain, a.values, eta);
  if (p.has_value()) return {*std::move(p), false};
  return {DiscreteDistribution::Uniform(a.domain), true};
}

absl::StatusOr<ReleasedModel> DpTransformFromShards(
    absl::Span<const DiscreteDistribution> shard_models,
    const TransformConfig& config, uint64_t tape_seed, uint64_t noise_seed) {
  if (shard_models.empty()) {
    return absl::InvalidArgumentError("transform needs at least one shard");
  }
  const CouplingTape tape =
      CouplingTape::Create(shard_models[0].domain_ptr(), tape_seed);
  absl::StatusOr<Dataset> s_x = CoupledShardSample(tape, shard_models);
  if (!s_x.ok()) return s_x.status();
  absl::StatusOr<NoisyHistogram> a =
      PrivateHistogram(*s_x, config.dp.epsilon, config.dp.delta, noise_seed);
  if (!a.ok()) return a.status();
  return ReleaseModel(*a, config.dp.eta);
}

absl::StatusOr<TransformTrace> DpTransformTraced(const Learner& learner,
                                                 const Dataset& s_b,
                                                 const TransformConfig& config,
                                                 uint64_t tape_seed,
                                                 uint64_t noise_seed) {
  absl::StatusOr<std::vector<DiscreteDistribution>> models =
      TrainShardModels(learner, s_b, config);
  if (!models.ok()) return models.status();
  const CouplingTape tape = CouplingTape::Create(s_b.domain_ptr(), tape_seed);
  absl::StatusOr<Dataset> s_x = CoupledShardSample(tape, *models);
  if (!s_x.ok()) return s_x.status();
  absl::StatusOr<NoisyHistogram> a =
      PrivateHistogram(*s_x, config.dp.epsilon, config.dp.delta, noise_seed);
  if (!a.ok()) return a.status();
  ReleasedModel released = ReleaseModel(*a, config.dp.eta);
  return TransformTrace{*std::move(models), *std::move(s_x), *std::move(a),
                        std::move(released)};
}

absl::StatusOr<DiscreteDistribution> DpTransform(const Learner& learner,
                                                 const Dataset& s_b,
                                                 const TransformConfig& config,
                                                 uint64_t tape_seed,
                                                 uint64_t noise_seed) {
  absl::StatusOr<TransformTrace> trace =
      DpTransformTraced(learner, s_b, config, tape_seed, noise_seed);
  if (!trace.ok()) return trace.status();
  return std::move(trace->released.model);
}

double StabilityTransferBound(double alpha) {
  return 2.0 * alpha / (1.0 + alpha);
}

absl::StatusOr<Prop1Report> Prop1Experiment(const Learner& learner,
                                            const DiscreteDistribution& data,
                                            const TransformConfig& config,
                                            const Prop1Options& options) {
  if (options.outer_trials < 1 || options.inner_trials < 1 ||
      options.premise_trials < 1) {
    return absl::InvalidArgumentError("experiment trial counts must be >= 1");
  }
  Prop1Report report;
  absl::StatusOr<double> alpha_hat =
      EstimatePremiseAlpha(learner, data, config.m, options.premise_trials,
                           DeriveSeed(options.seed, "prop1/premise", 0));
  if (!alpha_hat.ok()) return alpha_hat.status();
  report.alpha_hat = *alpha_hat;
  report.bound = StabilityTransferBound(report.alpha_hat) +
                 kEtaSlackConstant * config.dp.eta;

  struct Outer {
    absl::Status status;
    double tv = 0.0;
    int64_t fallbacks = 0;
  };
  std::vector<Outer> outer(static_cast<size_t>(options.outer_trials));
  const size_t n = data.size();
  ParallelFor(outer.size(), [&](size_t t) {
    Outer& out = outer[t];
    Rng rng(DeriveSeed(options.seed, "prop1/sample", t));
    const Dataset s_a = SampleDataset(data, static_cast<size_t>(config.m), rng);
    const Dataset s_b =
        SampleDataset(data, static_cast<size_t>(config.m_priv), rng);
    absl::StatusOr<DiscreteDistribution> q_a =
        learner(s_a, DeriveSeed(options.seed, "prop1/learner", t));
    if (!q_a.ok()) {
      out.status = q_a.status();
      return;
    }
    // Shard models do not depend on the tape or noise seeds.
    absl::StatusOr<std::vector<DiscreteDistribution>> shards =
        TrainShardModels(learner, s_b, config);
    if (!shards.ok()) {
      out.status = shards.status();
      return;
    }
    std::vector<double> mean(n, 0.0);
    for (int64_t j = 0; j < options.inner_trials; ++j) {
      const uint64_t run = static_cast<uint64_t>(t) * options.inner_trials + j;
      absl::StatusOr<ReleasedModel> p = DpTransformFromShards(
          *shards, config, DeriveSeed(options.seed, "prop1/tape", run),
          DeriveSeed(options.seed, "prop1/noise", run));
      if (!p.ok()) {
        out.status = p.status();
        return;
      }
      out.fallbacks += p->fallback;
      for (size_t z = 0; z < n; ++z) mean[z] += p->model.weights()[z];
    }
    for (double& w : mean) w /= static_cast<double>(options.inner_trials);
    absl::StatusOr<DiscreteDistribution> mean_model =
        DiscreteDistribution::Create(data.domain_ptr(), std::move(mean));
    if (!mean_model.ok()) {
      out.status = mean_model.status();
      return;
    }
    absl::StatusOr<double> tv = TvDistance(*mean_model, *q_a);
    if (!tv.ok()) {
      out.status = tv.status();
      return;
    }
    out.tv = *tv;
  });

  double sum = 0.0;
  for (const Outer& o : outer) {
    if (!o.status.ok()) return o.status;
    report.trial_tv.push_back(o.tv);
    report.fallbacks += o.fallbacks;
    sum += o.tv;
  }
  report.grand_mean = sum / static_cast<double>(outer.size());
  return report;
}

}  // namespace stability_lab
