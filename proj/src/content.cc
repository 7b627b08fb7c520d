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

#include "stability_lab/content.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"

namespace stability_lab {

ContentDomain::ContentDomain(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  index_.reserve(symbols_.size());
  for (size_t i = 0; i < symbols_.size(); ++i) {
    index_.emplace(symbols_[i], static_cast<SymbolId>(i));
  }
}

absl::StatusOr<DomainPtr> ContentDomain::Create(
    std::vector<std::string> symbols) {
  if (symbols.empty()) {
    return absl::InvalidArgumentError("content domain must be non-empty");
  }
  if (symbols.size() > std::numeric_limits<SymbolId>::max()) {
    return absl::InvalidArgumentError("content domain too large");
  }
  auto domain = std::shared_ptr<const ContentDomain>(
      new ContentDomain(std::move(symbols)));
  if (domain->index_.size() != domain->symbols_.size()) {
    return absl::InvalidArgumentError("content domain symbols must be unique");
  }
  return domain;
}

absl::StatusOr<SymbolId> ContentDomain::Find(absl::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) {
    return absl::NotFoundError(
        absl::StrCat("symbol '", symbol, "' is not in the content domain"));
  }
  return it->second;
}

bool ContentDomain::Contains(absl::string_view symbol) const {
  return index_.contains(symbol);
}

bool SameDomain(const ContentDomain& a, const ContentDomain& b) {
  return &a == &b || a.symbols() == b.symbols();
}

absl::Status CheckSameDomain(const ContentDomain& a, const ContentDomain& b) {
  if (!SameDomain(a, b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain mismatch: domains of size ", a.size(), " and ",
                     b.size(), " differ"));
  }
  return absl::OkStatus();
}

absl::StatusOr<DiscreteDistribution> DiscreteDistribution::Create(
    DomainPtr domain, std::vector<double> weights) {
  if (domain == nullptr) {
    return absl::InvalidArgumentError("distribution requires a domain");
  }
  if (weights.size() != domain->size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("length mismatch: ", weights.size(),
                     " weights for a domain of size ", domain->size()));
  }
  double sum = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative weight ", weights[i], " at symbol '",
                       domain->symbol(static_cast<SymbolId>(i)), "'"));
    }
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("not normalized: weights sum to ", sum));
  }
  return DiscreteDistribution(std::move(domain), std::move(weights));
}

DiscreteDistribution DiscreteDistribution::Uniform(DomainPtr domain) {
  const size_t n = domain->size();
  return DiscreteDistribution(std::move(domain),
                              std::vector<double>(n, 1.0 / n));
}

DiscreteDistribution DiscreteDistribution::PointMass(DomainPtr domain,
                                                     SymbolId at) {
  std::vector<double> w(domain->size(), 0.0);
  w[at] = 1.0;
  return DiscreteDistribution(std::move(domain), std::move(w));
}

Dataset::Dataset(DomainPtr domain, std::vector<SymbolId> items)
    : domain_(std::move(domain)), items_(std::move(items)) {}

absl::StatusOr<Dataset> Dataset::FromSymbols(
    DomainPtr domain, absl::Span<const std::string> symbols) {
  std::vector<SymbolId> items;
  items.reserve(symbols.size());
  for (const std::string& s : symbols) {
    absl::StatusOr<SymbolId> id = domain->Find(s);
    if (!id.ok()) return id.status();
    items.push_back(*id);
  }
  return Dataset(std::move(domain), std::move(items));
}

std::vector<int64_t> Dataset::Counts() const {
  std::vector<int64_t> counts(domain_->size(), 0);
  for (SymbolId z : items_) ++counts[z];
  return counts;
}

Dataset Dataset::Slice(size_t begin, size_t length) const {
  return Dataset(domain_,
                 std::vector<SymbolId>(items_.begin() + begin,
                                       items_.begin() + begin + length));
}

Event::Event(DomainPtr domain, std::vector<bool> members)
    : domain_(std::move(domain)), members_(std::move(members)) {}

std::vector<std::string> Event::Symbols() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < members_.size(); ++i) {
    if (members_[i]) out.push_back(domain_->symbol(static_cast<SymbolId>(i)));
  }
  return out;
}

double Event::Mass(const DiscreteDistribution& q) const {
  double mass = 0.0;
  for (size_t i = 0; i < members_.size(); ++i) {
    if (members_[i]) mass += q[static_cast<SymbolId>(i)];
  }
  return mass;
}

absl::StatusOr<double> TvDistance(const DiscreteDistribution& q1,
                                  const DiscreteDistribution& q2) {
  if (absl::Status s = CheckSameDomain(q1.domain(), q2.domain()); !s.ok()) {
    return s;
  }
  double sum = 0.0;
  for (size_t z = 0; z < q1.size(); ++z) {
    sum += std::abs(q1.weights()[z] - q2.weights()[z]);
  }
  return 0.5 * sum;
}

absl::StatusOr<EventValue> TvEventForm(const DiscreteDistribution& q1,
                                       const DiscreteDistribution& q2) {
  if (absl::Status s = CheckSameDomain(q1.domain(), q2.domain()); !s.ok()) {
    return s;
  }
  const size_t n = q1.size();
  if (n > kMaxEnumerableDomain) {
    return absl::OutOfRangeError(
        absl::StrCat("domain too large for event enumeration: |Z| = ", n, " > ",
                     kMaxEnumerableDomain));
  }
  double best = 0.0;  // The empty event.
  uint32_t best_mask = 0;
  for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
    double gap = 0.0;
    for (size_t z = 0; z < n; ++z) {
      if (mask & (uint32_t{1} << z)) gap += q1.weights()[z] - q2.weights()[z];
    }
    if (gap > best) {
      best = gap;
      best_mask = mask;
    }
  }
  std::vector<bool> members(n);
  for (size_t z = 0; z < n; ++z) members[z] = best_mask & (uint32_t{1} << z);
  return EventValue{best, Event(q1.domain_ptr(), std::move(members))};
}

Sampler::Sampler(const DiscreteDistribution& q) {
  cdf_.reserve(q.size());
  double acc = 0.0;
  for (size_t z = 0; z < q.size(); ++z) {
    acc += q.weights()[z];
    cdf_.push_back(acc);
    if (q.weights()[z] > 0.0) last_supported_ = static_cast<SymbolId>(z);
  }
}

SymbolId Sampler::operator()(Rng& rng) const {
  const double u = rng.Uniform();
  // upper_bound skips zero-probability symbols, whose cdf equals their
  // predecessor's.
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return last_supported_;  // u beyond rounded total
  return static_cast<SymbolId>(it - cdf_.begin());
}

SymbolId Sample(const DiscreteDistribution& q, Rng& rng) {
  return Sampler(q)(rng);
}

SymbolId Sample(const DiscreteDistribution& q, uint64_t seed) {
  Rng rng(seed);
  return Sample(q, rng);
}

Dataset SampleDataset(const DiscreteDistribution& q, size_t m, Rng& rng) {
  Sampler sampler(q);
  std::vector<SymbolId> items(m);
  for (SymbolId& item : items) item = sampler(rng);
  return Dataset(q.domain_ptr(), std::move(items));
}

absl::StatusOr<std::vector<double>> MinEnvelope(
    absl::Span<const DiscreteDistribution> models) {
  if (models.empty()) {
    return absl::InvalidArgumentError("min envelope of an empty model list");
  }
  std::vector<double> env(models[0].weights().begin(),
                          models[0].weights().end());
  for (const DiscreteDistribution& q : models.subspan(1)) {
    if (absl::Status s = CheckSameDomain(models[0].domain(), q.domain());
        !s.ok()) {
      return s;
    }
    for (size_t z = 0; z < env.size(); ++z) {
      env[z] = std::min(env[z], q.weights()[z]);
    }
  }
  return env;
}

}  // namespace stability_lab
