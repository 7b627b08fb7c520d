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

// Finite content domains and the discrete objects defined over them. A model
// is a DiscreteDistribution; a dataset is a multiset of symbols.

#ifndef STABILITY_LAB_CONTENT_H_
#define STABILITY_LAB_CONTENT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "stability_lab/random.h"

namespace stability_lab {

// Absolute tolerance on |sum(weights) - 1| accepted at construction.
inline constexpr double kNormalizationTolerance = 1e-9;

// Largest domain for which 2^|Z| event enumeration is allowed.
inline constexpr size_t kMaxEnumerableDomain = 20;

// Index of a symbol within its ContentDomain.
using SymbolId = uint32_t;

// An ordered set of distinct content identifiers. Immutable.
class ContentDomain {
 public:
  static absl::StatusOr<std::shared_ptr<const ContentDomain>> Create(
      std::vector<std::string> symbols);

  size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(SymbolId id) const { return symbols_[id]; }

  absl::StatusOr<SymbolId> Find(absl::string_view symbol) const;
  bool Contains(absl::string_view symbol) const;

 private:
  explicit ContentDomain(std::vector<std::string> symbols);

  std::vector<std::string> symbols_;
  absl::flat_hash_map<std::string, SymbolId> index_;
};

using DomainPtr = std::shared_ptr<const ContentDomain>;

// Two domains are the same when they list the same symbols in the same order.
bool SameDomain(const ContentDomain& a, const ContentDomain& b);

// A probability vector over a ContentDomain. Zero-probability symbols are kept
// so that symbol indices are stable everywhere.
class DiscreteDistribution {
 public:
  // Weights must be finite and non-negative, one per symbol. Their sum must
  // lie within kNormalizationTolerance of 1.
  static absl::StatusOr<DiscreteDistribution> Create(
      DomainPtr domain, std::vector<double> weights);

  static DiscreteDistribution Uniform(DomainPtr domain);
  static DiscreteDistribution PointMass(DomainPtr domain, SymbolId at);

  const ContentDomain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  size_t size() const { return weights_.size(); }
  absl::Span<const double> weights() const { return weights_; }
  double operator[](SymbolId z) const { return weights_[z]; }

 private:
  DiscreteDistribution(DomainPtr domain, std::vector<double> weights)
      : domain_(std::move(domain)), weights_(std::move(weights)) {}

  DomainPtr domain_;
  std::vector<double> weights_;
};

// A multiset of symbols, kept in input order.
class Dataset {
 public:
  Dataset(DomainPtr domain, std::vector<SymbolId> items);

  static absl::StatusOr<Dataset> FromSymbols(
      DomainPtr domain, absl::Span<const std::string> symbols);

  const ContentDomain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<SymbolId>& items() const { return items_; }
  SymbolId operator[](size_t i) const { return items_[i]; }

  // Per-symbol occurrence counts, indexed by SymbolId.
  std::vector<int64_t> Counts() const;

  // Items [begin, begin + length).
  Dataset Slice(size_t begin, size_t length) const;

 private:
  DomainPtr domain_;
  std::vector<SymbolId> items_;
};

// A subset of a domain.
class Event {
 public:
  Event(DomainPtr domain, std::vector<bool> members);

  const ContentDomain& domain() const { return *domain_; }
  bool Contains(SymbolId z) const { return members_[z]; }
  std::vector<std::string> Symbols() const;

  // Probability mass of the event under q.
  double Mass(const DiscreteDistribution& q) const;

 private:
  DomainPtr domain_;
  std::vector<bool> members_;
};

// Total variation distance, 1/2 sum_z |q1(z) - q2(z)|.
absl::StatusOr<double> TvDistance(const DiscreteDistribution& q1,
                                  const DiscreteDistribution& q2);

struct EventValue {
  double value;
  Event event;
};

// max over all 2^|Z| events E of q1(E) - q2(E), by enumeration. Oracle for
// TvDistance; refuses domains larger than kMaxEnumerableDomain.
absl::StatusOr<EventValue> TvEventForm(const DiscreteDistribution& q1,
                                       const DiscreteDistribution& q2);

// Draws one symbol from q. Deterministic given the seed.
SymbolId Sample(const DiscreteDistribution& q, uint64_t seed);
SymbolId Sample(const DiscreteDistribution& q, Rng& rng);

// Inverse-CDF sampler for repeated draws from one distribution.
class Sampler {
 public:
  explicit Sampler(const DiscreteDistribution& q);

  SymbolId operator()(Rng& rng) const;

 private:
  std::vector<double> cdf_;
  SymbolId last_supported_ = 0;
};

// An i.i.d. sample of size m from q.
Dataset SampleDataset(const DiscreteDistribution& q, size_t m, Rng& rng);

// Pointwise minimum min_c q_c(z). The result generally sums to less than 1.
absl::StatusOr<std::vector<double>> MinEnvelope(
    absl::Span<const DiscreteDistribution> models);

// InvalidArgument ("domain mismatch") unless a and b are the same domain.
absl::Status CheckSameDomain(const ContentDomain& a, const ContentDomain& b);

}  // namespace stability_lab

#endif  // STABILITY_LAB_CONTENT_H_
