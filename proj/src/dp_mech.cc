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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "stability_lab/random.h"

namespace stability_lab {
namespace {

absl::Status CheckAlpha(double alpha) {
  if (!(alpha >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be >= 0, got ", alpha));
  }
  return absl::OkStatus();
}

absl::Status CheckHistogramParams(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must be in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

// Released value for a noisy count j. Shared by the sampler and the exact law
// so that both apply the identical floating-point predicate.
double ReleaseValue(int64_t noisy_count, int64_t k, double tau) {
  const double noisy =
      static_cast<double>(noisy_count) / static_cast<double>(k);
  if (noisy < tau) return 0.0;
  return std::clamp(noisy, 0.0, 1.0);
}

// Law of the released value for one symbol with true count c >= 1.
std::map<double, double> SymbolValueLaw(int64_t c, int64_t k, double tau,
                                        double r) {
  // P(G = g) = (1 - r) / (1 + r) r^|g|;  P(G >= t) = r^t / (1 + r), t >= 1.
  const double norm = (1.0 - r) / (1.0 + r);
  auto tail_at_least = [&](int64_t t) {
    if (t >= 1) return std::pow(r, static_cast<double>(t)) / (1.0 + r);
    return 1.0 - std::pow(r, static_cast<double>(1 - t)) / (1.0 + r);
  };

  // Smallest noisy count that clears the threshold. Everything at or above
  // max(k, that count) releases exactly 1; everything <= 0 releases 0.
  int64_t first_release = 1;
  while (ReleaseValue(first_release, k, tau) == 0.0) ++first_release;
  const int64_t saturate = std::max(k, first_release);

  std::map<double, double> law;
  law[0.0] += tail_at_least(c);  // noisy count <= 0, i.e. G <= -c
  for (int64_t j = 1; j < saturate; ++j) {
    law[ReleaseValue(j, k, tau)] +=
        norm * std::pow(r, static_cast<double>(std::llabs(j - c)));
  }
  law[ReleaseValue(saturate, k, tau)] += tail_at_least(saturate - c);
  return law;
}

std::string OutcomeKey(const std::vector<double>& values) {
  return absl::StrJoin(values, ",", [](std::string* out, double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out->append(buf, end);
  });
}

// Re-expresses two outcome lists as distributions over their union.
absl::StatusOr<std::pair<DiscreteDistribution, DiscreteDistribution>> AlignLaws(
    const std::vector<HistogramOutcome>& a,
    const std::vector<HistogramOutcome>& b) {
  std::map<std::string, std::pair<double, double>> merged;
  for (const HistogramOutcome& o : a) {
    merged[OutcomeKey(o.values)].first += o.probability;
  }
  for (const HistogramOutcome& o : b) {
    merged[OutcomeKey(o.values)].second += o.probability;
  }
  std::vector<std::string> keys;
  std::vector<double> wa, wb;
  for (const auto& [key, probs] : merged) {
    keys.push_back(key);
    wa.push_back(probs.first);
    wb.push_back(probs.second);
  }
  absl::StatusOr<DomainPtr> domain = ContentDomain::Create(std::move(keys));
  if (!domain.ok()) return domain.status();
  absl::StatusOr<DiscreteDistribution> pa =
      DiscreteDistribution::Create(*domain, std::move(wa));
  if (!pa.ok()) return pa.status();
  absl::StatusOr<DiscreteDistribution> pb =
      DiscreteDistribution::Create(*domain, std::move(wb));
  if (!pb.ok()) return pb.status();
  return std::make_pair(*std::move(pa), *std::move(pb));
}

}  // namespace

absl::Status ValidateDpParams(const DpParams& params) {
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", params.epsilon));
  }
  auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_unit(params.delta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must be in (0, 1), got ", params.delta));
  }
  if (!in_unit(params.eta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eta must be in (0, 1), got ", params.eta));
  }
  if (!in_unit(params.beta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must be in (0, 1), got ", params.beta));
  }
  return absl::OkStatus();
}

double Freq(const Dataset& s, SymbolId z) {
  if (s.empty()) return 0.0;
  const int64_t count = std::count(s.items().begin(), s.items().end(), z);
  return static_cast<double>(count) / static_cast<double>(s.size());
}

absl::StatusOr<double> DpBeta(const DiscreteDistribution& p,
                              const DiscreteDistribution& p_prime,
                              double alpha) {
  if (absl::Status s = CheckSameDomain(p.domain(), p_prime.domain()); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckAlpha(alpha); !s.ok()) return s;
  const double scale = std::exp(alpha);
  double beta = 0.0;
  for (size_t z = 0; z < p.size(); ++z) {
    beta += std::max(p.weights()[z] - scale * p_prime.weights()[z], 0.0);
  }
  return beta;
}

absl::StatusOr<EventValue> DpBetaEventForm(const DiscreteDistribution& p,
                                           const DiscreteDistribution& p_prime,
                                           double alpha) {
  if (absl::Status s = CheckSameDomain(p.domain(), p_prime.domain()); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckAlpha(alpha); !s.ok()) return s;
  const size_t n = p.size();
  if (n > kMaxEnumerableDomain) {
    return absl::OutOfRangeError(
        absl::StrCat("domain too large for event enumeration: |Z| = ", n, " > ",
                     kMaxEnumerableDomain));
  }
  const double scale = std::exp(alpha);
  double best = 0.0;
  uint32_t best_mask = 0;
  for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
    double pe = 0.0, pe_prime = 0.0;
    for (size_t z = 0; z < n; ++z) {
      if (mask & (uint32_t{1} << z)) {
        pe += p.weights()[z];
        pe_prime += p_prime.weights()[z];
      }
    }
    const double gap = pe - scale * pe_prime;
    if (gap > best) {
      best = gap;
      best_mask = mask;
    }
  }
  std::vector<bool> members(n);
  for (size_t z = 0; z < n; ++z) members[z] = best_mask & (uint32_t{1} << z);
  return EventValue{best, Event(p.domain_ptr(), std::move(members))};
}

absl::StatusOr<double> SymmetricDpBeta(const DiscreteDistribution& p,
                                       const DiscreteDistribution& p_prime,
                                       double alpha) {
  absl::StatusOr<double> forward = DpBeta(p, p_prime, alpha);
  if (!forward.ok()) return forward.status();
  absl::StatusOr<double> backward = DpBeta(p_prime, p, alpha);
  if (!backward.ok()) return backward.status();
  return std::max(*forward, *backward);
}

int64_t RequiredK(const DpParams& params) {
  const double k = kHistogramSampleConstant *
                   std::log(1.0 / (params.eta * params.beta * params.delta)) /
                   (params.eta * params.epsilon);
  return static_cast<int64_t>(std::ceil(k));
}

double HistogramThreshold(double epsilon, double delta, int64_t k) {
  const double kd = static_cast<double>(k);
  return 2.0 * std::log(2.0 / delta) / (epsilon * kd) + 1.0 / kd;
}

absl::StatusOr<NoisyHistogram> PrivateHistogram(const Dataset& s,
                                                double epsilon, double delta,
                                                uint64_t seed) {
  if (s.empty()) {
    return absl::InvalidArgumentError("empty dataset: histogram needs k >= 1");
  }
  if (absl::Status st = CheckHistogramParams(epsilon, delta); !st.ok()) {
    return st;
  }
  NoisyHistogram out;
  out.domain = s.domain_ptr();
  out.epsilon = epsilon;
  out.delta = delta;
  out.k = static_cast<int64_t>(s.size());
  out.tau = HistogramThreshold(epsilon, delta, out.k);
  out.values.assign(s.domain().size(), 0.0);

  const double r = std::exp(-epsilon / 2.0);
  const std::vector<int64_t> counts = s.Counts();
  Rng rng(seed);
  for (size_t z = 0; z < counts.size(); ++z) {
    if (counts[z] == 0) continue;
    out.values[z] =
        ReleaseValue(counts[z] + rng.TwoSidedGeometric(r), out.k, out.tau);
  }
  return out;
}

double HistogramLinfError(const NoisyHistogram& a, const Dataset& s) {
  const std::vector<int64_t> counts = s.Counts();
  const double k = static_cast<double>(s.size());
  double worst = 0.0;
  for (size_t z = 0; z < counts.size(); ++z) {
    worst = std::max(worst, std::abs(a.values[z] - counts[z] / k));
  }
  return worst;
}

absl::StatusOr<std::vector<HistogramOutcome>> HistogramOutputLaw(
    const Dataset& s, double epsilon, double delta) {
  if (s.empty()) {
    return absl::InvalidArgumentError("empty dataset: histogram needs k >= 1");
  }
  if (absl::Status st = CheckHistogramParams(epsilon, delta); !st.ok()) {
    return st;
  }
  const int64_t k = static_cast<int64_t>(s.size());
  const double tau = HistogramThreshold(epsilon, delta, k);
  const double r = std::exp(-epsilon / 2.0);
  const std::vector<int64_t> counts = s.Counts();

  // Symbols are noised independently: the joint law is a product.
  std::vector<HistogramOutcome> law = {
      {std::vector<double>(counts.size(), 0.0), 1.0}};
  for (size_t z = 0; z < counts.size(); ++z) {
    if (counts[z] == 0) continue;
    const std::map<double, double> marginal =
        SymbolValueLaw(counts[z], k, tau, r);
    std::vector<HistogramOutcome> next;
    next.reserve(law.size() * marginal.size());
    for (const HistogramOutcome& o : law) {
      for (const auto& [value, prob] : marginal) {
        HistogramOutcome extended = o;
        extended.values[z] = value;
        extended.probability *= prob;
        next.push_back(std::move(extended));
      }
    }
    law = std::move(next);
  }
  return law;
}

absl::StatusOr<HistogramAudit> AuditHistogramPrivacy(DomainPtr domain,
                                                     int64_t k, double epsilon,
                                                     double delta) {
  if (k < 1) {
    return absl::InvalidArgumentError("empty dataset: histogram needs k >= 1");
  }
  const size_t n = domain->size();
  int64_t total = 1;
  for (int64_t i = 0; i < k; ++i) {
    total *= static_cast<int64_t>(n);
    if (total > 1'000'000) {
      return absl::OutOfRangeError("too many datasets to audit exhaustively");
    }
  }

  HistogramAudit audit{0.0, 0, Dataset(domain, {}), Dataset(domain, {})};
  std::vector<SymbolId> items(static_cast<size_t>(k));
  for (int64_t code = 0; code < total; ++code) {
    int64_t rest = code;
    for (SymbolId& item : items) {
      item = static_cast<SymbolId>(rest % static_cast<int64_t>(n));
      rest /= static_cast<int64_t>(n);
    }
    const Dataset s(domain, items);
    absl::StatusOr<std::vector<HistogramOutcome>> law_s =
        HistogramOutputLaw(s, epsilon, delta);
    if (!law_s.ok()) return law_s.status();

    for (size_t pos = 0; pos < items.size(); ++pos) {
      for (SymbolId replacement = 0; replacement < n; ++replacement) {
        if (replacement == items[pos]) continue;
        std::vector<SymbolId> neighbor_items = items;
        neighbor_items[pos] = replacement;
        const Dataset s_prime(domain, std::move(neighbor_items));
        absl::StatusOr<std::vector<HistogramOutcome>> law_s_prime =
            HistogramOutputLaw(s_prime, epsilon, delta);
        if (!law_s_prime.ok()) return law_s_prime.status();

        auto aligned = AlignLaws(*law_s, *law_s_prime);
        if (!aligned.ok()) return aligned.status();
        absl::StatusOr<double> beta =
            SymmetricDpBeta(aligned->first, aligned->second, epsilon);
        if (!beta.ok()) return beta.status();
        ++audit.pairs_checked;
        if (*beta > audit.max_beta || audit.pairs_checked == 1) {
          audit.max_beta = *beta;
          audit.worst_s = s;
          audit.worst_s_prime = s_prime;
        }
      }
    }
  }
  return audit;
}

}  // namespace stability_lab
