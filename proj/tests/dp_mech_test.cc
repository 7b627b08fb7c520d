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

#include "stability_lab/dp_mech.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "stability_lab/content.h"
#include "stability_lab/random.h"
#include "testing/stat_util.h"

namespace stability_lab {
namespace {

using ::stability_lab::testing::ChiSquareTest;
using ::stability_lab::testing::Dist;
using ::stability_lab::testing::MakeDomain;
using ::stability_lab::testing::RandomDistribution;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

DomainPtr Abc() { return *ContentDomain::Create({"a", "b", "c"}); }

TEST(FreqTest, Examples) {
  DomainPtr d = Abc();
  const Dataset s = *Dataset::FromSymbols(d, {"a", "a", "b"});
  EXPECT_DOUBLE_EQ(Freq(s, 0), 2.0 / 3.0);
  EXPECT_EQ(Freq(s, 2), 0.0);
  EXPECT_EQ(Freq(*Dataset::FromSymbols(d, {"a"}), 0), 1.0);
}

TEST(DpBetaTest, Examples) {
  DomainPtr d = MakeDomain(2);
  const DiscreteDistribution p = Dist(d, {0.75, 0.25});
  const DiscreteDistribution p_prime = Dist(d, {0.25, 0.75});
  EXPECT_EQ(*DpBeta(p, p, 0.0), 0.0);
  EXPECT_EQ(*DpBeta(p, p, 2.0), 0.0);
  EXPECT_NEAR(*DpBeta(p, p_prime, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(*DpBeta(p, p_prime, std::log(3.0)), 0.0, 1e-15);
}

TEST(DpBetaTest, Errors) {
  const DiscreteDistribution p = DiscreteDistribution::Uniform(MakeDomain(2));
  EXPECT_THAT(DpBeta(p, DiscreteDistribution::Uniform(MakeDomain(3)), 0.0)
                  .status()
                  .message(),
              HasSubstr("domain mismatch"));
  EXPECT_FALSE(DpBeta(p, p, -1.0).ok());
}

TEST(DpBetaEventFormTest, Examples) {
  DomainPtr d = MakeDomain(2);
  const DiscreteDistribution p = Dist(d, {0.75, 0.25});
  EXPECT_EQ(DpBetaEventForm(p, p, 0.0)->value, 0.0);

  EventValue disjoint = *DpBetaEventForm(Dist(d, {1, 0}), Dist(d, {0, 1}), 1.0);
  EXPECT_EQ(disjoint.value, 1.0);
  EXPECT_THAT(disjoint.event.Symbols(), ElementsAre("z0"));

  EventValue pair = *DpBetaEventForm(p, Dist(d, {0.25, 0.75}), 0.0);
  EXPECT_NEAR(pair.value, 0.5, 1e-15);
  EXPECT_THAT(pair.event.Symbols(), ElementsAre("z0"));

  EXPECT_EQ(DpBetaEventForm(DiscreteDistribution::Uniform(MakeDomain(21)),
                            DiscreteDistribution::Uniform(MakeDomain(21)), 0.0)
                .status()
                .code(),
            absl::StatusCode::kOutOfRange);
}

TEST(SymmetricDpBetaTest, Examples) {
  DomainPtr d = MakeDomain(2);
  const DiscreteDistribution p = Dist(d, {0.75, 0.25});
  const DiscreteDistribution p_prime = Dist(d, {0.25, 0.75});
  EXPECT_EQ(*SymmetricDpBeta(p, p, 0.3), 0.0);
  EXPECT_NEAR(*SymmetricDpBeta(p, p_prime, 0.0), 0.5, 1e-15);

  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    DomainPtr dd = MakeDomain(1 + rng.Below(8));
    const DiscreteDistribution a = RandomDistribution(dd, rng, 0.2);
    const DiscreteDistribution b = RandomDistribution(dd, rng, 0.2);
    const double alpha = rng.Uniform() * 2.0;
    EXPECT_EQ(*SymmetricDpBeta(a, b, alpha), *SymmetricDpBeta(b, a, alpha));
  }
}

TEST(DpBetaPropertiesTest, MatchesEventFormOracle) {
  Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    DomainPtr d = MakeDomain(1 + rng.Below(12));
    const DiscreteDistribution p = RandomDistribution(d, rng, 0.2);
    const DiscreteDistribution p_prime = RandomDistribution(d, rng, 0.2);
    const double alpha = trial % 3 == 0 ? 0.0 : rng.Uniform() * 3.0;
    const EventValue ev = *DpBetaEventForm(p, p_prime, alpha);
    EXPECT_NEAR(*DpBeta(p, p_prime, alpha), ev.value, 1e-12);
    EXPECT_NEAR(ev.event.Mass(p) - std::exp(alpha) * ev.event.Mass(p_prime),
                ev.value, 1e-12);
  }
}

TEST(DpBetaPropertiesTest, AtZeroEqualsTv) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    DomainPtr d = MakeDomain(1 + rng.Below(30));
    const DiscreteDistribution p = RandomDistribution(d, rng, 0.2);
    const DiscreteDistribution p_prime = RandomDistribution(d, rng, 0.2);
    EXPECT_NEAR(*DpBeta(p, p_prime, 0.0), *TvDistance(p, p_prime), 1e-12);
  }
}

TEST(DpBetaPropertiesTest, NonIncreasingAndVanishesPastMaxLogRatio) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    DomainPtr d = MakeDomain(2 + rng.Below(8));
    const DiscreteDistribution p = RandomDistribution(d, rng, 0.2);
    const DiscreteDistribution p_prime = RandomDistribution(d, rng, 0.0);
    double previous = 1.0;
    for (double alpha = 0.0; alpha < 5.0; alpha += 0.25) {
      const double beta = *DpBeta(p, p_prime, alpha);
      EXPECT_LE(beta, previous + 1e-15);
      previous = beta;
    }
    // p_prime has full support, so the max log-ratio is finite.
    double max_log_ratio = 0.0;
    for (SymbolId z = 0; z < d->size(); ++z) {
      if (p[z] > 0.0) {
        max_log_ratio = std::max(max_log_ratio, std::log(p[z] / p_prime[z]));
      }
    }
    EXPECT_NEAR(*DpBeta(p, p_prime, max_log_ratio), 0.0, 1e-15);
  }
}

TEST(RequiredKTest, ReferenceValue) {
  // ceil(8 ln(10^8) / 0.1) = ceil(1473.65...) = 1474.
  EXPECT_EQ(RequiredK({1.0, 1e-6, 0.1, 0.1}), 1474);
}

TEST(RequiredKTest, Scaling) {
  const DpParams base{1.0, 1e-6, 0.1, 0.1};
  const int64_t k = RequiredK(base);
  EXPECT_GE(RequiredK({1.0, 1e-6, 0.05, 0.1}), 2 * k);
  EXPECT_GE(RequiredK({1.0, 1e-6, 0.05, 0.05}), 2 * k);
  EXPECT_LE(std::llabs(RequiredK({2.0, 1e-6, 0.1, 0.1}) - k / 2), 1);
}

TEST(ValidateDpParamsTest, Ranges) {
  EXPECT_TRUE(ValidateDpParams({1.0, 1e-6, 0.1, 0.1}).ok());
  EXPECT_FALSE(ValidateDpParams({0.0, 1e-6, 0.1, 0.1}).ok());
  EXPECT_FALSE(ValidateDpParams({1.0, 1.0, 0.1, 0.1}).ok());
  EXPECT_FALSE(ValidateDpParams({1.0, 1e-6, 0.0, 0.1}).ok());
  EXPECT_FALSE(ValidateDpParams({1.0, 1e-6, 0.1, 1.5}).ok());
}

TEST(PrivateHistogramTest, NoiselessLimit) {
  DomainPtr d = Abc();
  const Dataset s(d, std::vector<SymbolId>(10, 1));
  const NoisyHistogram a = *PrivateHistogram(s, 60.0, 1e-6, 3);
  EXPECT_THAT(a.values, ElementsAre(0.0, 1.0, 0.0));
  EXPECT_EQ(a.k, 10);
  EXPECT_DOUBLE_EQ(a.tau, HistogramThreshold(60.0, 1e-6, 10));
}

TEST(PrivateHistogramTest, AbsentSymbolsAreZeroAndPositivityHolds) {
  DomainPtr d = MakeDomain(6);
  Rng rng(31);
  const Dataset s =
      SampleDataset(Dist(d, {0.5, 0.3, 0.2, 0.0, 0.0, 0.0}), 40, rng);
  const std::vector<int64_t> counts = s.Counts();
  for (uint64_t seed = 0; seed < 500; ++seed) {
    const NoisyHistogram a = *PrivateHistogram(s, 1.0, 0.05, seed);
    for (SymbolId z = 0; z < d->size(); ++z) {
      EXPECT_GE(a.values[z], 0.0);
      EXPECT_LE(a.values[z], 1.0);
      if (counts[z] == 0) EXPECT_EQ(a.values[z], 0.0);
      if (a.values[z] > 0.0) EXPECT_GT(counts[z], 0);
    }
  }
}

TEST(PrivateHistogramTest, Errors) {
  DomainPtr d = Abc();
  EXPECT_THAT(PrivateHistogram(Dataset(d, {}), 1.0, 1e-6, 0).status().message(),
              HasSubstr("empty dataset"));
  const Dataset s(d, {0, 1});
  EXPECT_FALSE(PrivateHistogram(s, 0.0, 1e-6, 0).ok());
  EXPECT_FALSE(PrivateHistogram(s, 1.0, 0.0, 0).ok());
}

TEST(PrivateHistogramTest, AccuracyAtRequiredK) {
  const DpParams params{1.0, 1e-6, 0.1, 0.1};
  const int64_t k = RequiredK(params);
  DomainPtr d = MakeDomain(8);
  Rng rng(32);
  const Dataset s = SampleDataset(
      Dist(d, {0.3, 0.2, 0.15, 0.1, 0.1, 0.08, 0.05, 0.02}), k, rng);
  int within = 0;
  const int runs = 200;
  for (int run = 0; run < runs; ++run) {
    const NoisyHistogram a = *PrivateHistogram(s, 1.0, 1e-6, run);
    within += HistogramLinfError(a, s) <= params.eta;
  }
  EXPECT_GE(within, 0.88 * runs);
}

// Independent oracle: sums the two-sided geometric pmf over |g| <= bound and
// applies the release rule directly. Omitted tail mass is below 1e-13.
std::map<std::vector<double>, double> TruncatedLaw(const Dataset& s,
                                                   double epsilon,
                                                   double delta) {
  const int64_t k = s.size();
  const double tau = 2.0 * std::log(2.0 / delta) / (epsilon * k) + 1.0 / k;
  const double r = std::exp(-epsilon / 2.0);
  const int64_t bound =
      static_cast<int64_t>(std::ceil(std::log(1e-14) / std::log(r))) + 1;
  const std::vector<int64_t> counts = s.Counts();
  std::map<std::vector<double>, double> law = {
      {std::vector<double>(counts.size(), 0.0), 1.0}};
  for (size_t z = 0; z < counts.size(); ++z) {
    if (counts[z] == 0) continue;
    std::map<double, double> marginal;
    for (int64_t g = -bound; g <= bound; ++g) {
      const double noisy = static_cast<double>(counts[z] + g) / k;
      const double value = noisy >= tau ? std::clamp(noisy, 0.0, 1.0) : 0.0;
      marginal[value] += (1 - r) / (1 + r) * std::pow(r, std::llabs(g));
    }
    std::map<std::vector<double>, double> next;
    for (const auto& [values, p] : law) {
      for (const auto& [v, q] : marginal) {
        std::vector<double> extended = values;
        extended[z] = v;
        next[extended] += p * q;
      }
    }
    law = std::move(next);
  }
  return law;
}

TEST(HistogramOutputLawTest, MatchesTruncatedSumOracle) {
  struct Case {
    std::vector<SymbolId> items;
    double epsilon;
    double delta;
  } cases[] = {
      {{0, 0, 1}, 1.0, 1e-3},
      {{0, 1, 2, 2}, 2.0, 0.3},
      {{0, 0, 0, 1, 1, 2}, 4.0, 0.2},
      {{2}, 0.5, 0.5},
  };
  for (const Case& c : cases) {
    const Dataset s(Abc(), c.items);
    const std::vector<HistogramOutcome> law =
        *HistogramOutputLaw(s, c.epsilon, c.delta);
    const auto oracle = TruncatedLaw(s, c.epsilon, c.delta);
    std::map<std::vector<double>, double> merged;
    double total = 0.0;
    for (const HistogramOutcome& o : law) {
      merged[o.values] += o.probability;
      total += o.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (const auto& [values, p] : oracle) {
      EXPECT_NEAR(merged[values], p, 1e-12);
    }
    for (const auto& [values, p] : merged) {
      EXPECT_NEAR(oracle.count(values) ? oracle.at(values) : 0.0, p, 1e-12);
    }
  }
}

TEST(HistogramOutputLawTest, AgreesWithSampler) {
  const Dataset s(Abc(), {0, 1, 2, 2});
  const std::vector<HistogramOutcome> law = *HistogramOutputLaw(s, 2.0, 0.3);
  std::map<std::vector<double>, size_t> index;
  std::vector<double> expected;
  for (const HistogramOutcome& o : law) {
    auto [it, inserted] = index.emplace(o.values, expected.size());
    if (inserted) expected.push_back(0.0);
    expected[it->second] += o.probability;
  }
  std::vector<int64_t> counts(expected.size(), 0);
  for (uint64_t seed = 0; seed < 100000; ++seed) {
    const NoisyHistogram a = *PrivateHistogram(s, 2.0, 0.3, seed);
    auto it = index.find(a.values);
    ASSERT_NE(it, index.end());
    ++counts[it->second];
  }
  EXPECT_TRUE(ChiSquareTest(counts, expected).passes);
}

TEST(AuditHistogramPrivacyTest, MicroScaleIsDeltaPrivate) {
  const double epsilon = 1.0;
  const double delta = 1e-3;
  const HistogramAudit audit = *AuditHistogramPrivacy(
      *ContentDomain::Create({"a", "b"}), 3, epsilon, delta);
  EXPECT_EQ(audit.pairs_checked, 8 * 3);
  EXPECT_LE(audit.max_beta, delta);
  // Worst case: a symbol with count 1 disappears. Its release needs a noisy
  // count >= 17 (tau * k = 2 ln 2000 + 1 = 16.2), i.e. G >= 16, and nothing
  // else contributes, so beta = P(G >= 16) = r^16 / (1 + r), r = e^{-1/2}.
  EXPECT_NEAR(audit.max_beta, std::exp(-8.0) / (1.0 + std::exp(-0.5)), 1e-15);
  std::vector<int64_t> counts = audit.worst_s.Counts();
  const std::vector<int64_t> prime_counts = audit.worst_s_prime.Counts();
  counts.insert(counts.end(), prime_counts.begin(), prime_counts.end());
  EXPECT_THAT(counts, ::testing::Contains(1));
}

TEST(AuditHistogramPrivacyTest, DetectsAThresholdTooLowForDelta) {
  // With delta near 1 the threshold barely bites and the singleton leak is
  // far above a strict target; the audit has to report it.
  const HistogramAudit audit =
      *AuditHistogramPrivacy(*ContentDomain::Create({"a", "b"}), 2, 1.0, 0.9);
  EXPECT_GT(audit.max_beta, 0.05);
}

}  // namespace
}  // namespace stability_lab
