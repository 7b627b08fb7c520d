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

#include "stability_lab/naf.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/types/span.h"
#include "stability_lab/parallel.h"
#include "stability_lab/random.h"

namespace stability_lab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckNonEmpty(const SafeAssignment& safes) {
  if (safes.empty()) {
    return absl::InvalidArgumentError("empty safe assignment");
  }
  return absl::OkStatus();
}

absl::Status CheckModelDomain(const DiscreteDistribution& p,
                              const SafeAssignment& safes) {
  for (const DiscreteDistribution& q : safes.models()) {
    if (absl::Status s = CheckSameDomain(p.domain(), q.domain()); !s.ok()) {
      return s;
    }
  }
  return absl::OkStatus();
}

// ln(p / q) with 0/0 treated as no constraint (returns -inf).
double LogRatio(double p, double q) {
  if (p <= 0.0) return -kInf;
  if (q <= 0.0) return kInf;
  return std::log(p / q);
}

absl::Status CheckDatasetSize(const Dataset& s) {
  if (s.size() < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dataset too small: safe models need |S| >= 2, got ", s.size()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<SafeAssignment> SafeAssignment::Create(
    std::vector<std::string> ids, std::vector<DiscreteDistribution> models) {
  if (ids.size() != models.size()) {
    return absl::InvalidArgumentError(absl::StrCat("safe assignment has ",
                                                   ids.size(), " ids but ",
                                                   models.size(), " models"));
  }
  absl::flat_hash_set<std::string> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate protected content id '", id, "'"));
    }
  }
  for (const DiscreteDistribution& q : models) {
    if (absl::Status s = CheckSameDomain(models[0].domain(), q.domain());
        !s.ok()) {
      return s;
    }
  }
  return SafeAssignment(std::move(ids), std::move(models));
}

absl::StatusOr<SafeAssignment> SafeAssignment::With(
    std::string id, DiscreteDistribution model) const {
  std::vector<std::string> ids = ids_;
  std::vector<DiscreteDistribution> models = models_;
  ids.push_back(std::move(id));
  models.push_back(std::move(model));
  return Create(std::move(ids), std::move(models));
}

absl::StatusOr<SafeAssignment> SafeLeaveOneOut(const Learner& learner,
                                               const Dataset& s,
                                               uint64_t seed) {
  if (absl::Status st = CheckDatasetSize(s); !st.ok()) return st;
  const std::vector<int64_t> counts = s.Counts();
  std::vector<std::string> ids;
  std::vector<DiscreteDistribution> models;
  for (SymbolId c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    std::vector<SymbolId> rest = s.items();
    rest.erase(std::find(rest.begin(), rest.end(), c));
    absl::StatusOr<DiscreteDistribution> q =
        learner(Dataset(s.domain_ptr(), std::move(rest)), seed);
    if (!q.ok()) return q.status();
    ids.push_back(s.domain().symbol(c));
    models.push_back(*std::move(q));
  }
  return SafeAssignment::Create(std::move(ids), std::move(models));
}

std::array<Dataset, 2> SplitHalves(const Dataset& s, uint64_t seed) {
  std::vector<size_t> order(s.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.Below(i)]);
  }
  const size_t half = s.size() / 2;
  std::vector<size_t> first(order.begin(), order.begin() + half);
  std::vector<size_t> second(order.begin() + half, order.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  auto gather = [&](const std::vector<size_t>& idx) {
    std::vector<SymbolId> items;
    items.reserve(idx.size());
    for (size_t i : idx) items.push_back(s[i]);
    return Dataset(s.domain_ptr(), std::move(items));
  };
  return {gather(first), gather(second)};
}

absl::StatusOr<SafeAssignment> SafeSharded(const Learner& learner,
                                           const Dataset& s, uint64_t seed) {
  if (absl::Status st = CheckDatasetSize(s); !st.ok()) return st;
  const std::array<Dataset, 2> halves = SplitHalves(s, seed);
  std::array<std::vector<int64_t>, 2> counts = {halves[0].Counts(),
                                                halves[1].Counts()};
  std::array<std::optional<DiscreteDistribution>, 2> half_models;
  auto model_of_half = [&](int h) -> absl::StatusOr<DiscreteDistribution> {
    if (!half_models[h].has_value()) {
      absl::StatusOr<DiscreteDistribution> q = learner(halves[h], seed);
      if (!q.ok()) return q.status();
      half_models[h] = *std::move(q);
    }
    return *half_models[h];
  };

  std::vector<std::string> ids;
  std::vector<DiscreteDistribution> models;
  for (SymbolId c = 0; c < s.domain().size(); ++c) {
    const bool in0 = counts[0][c] > 0;
    const bool in1 = counts[1][c] > 0;
    if (!in0 && !in1) continue;
    absl::StatusOr<DiscreteDistribution> q;
    if (in0 && in1) {
      std::vector<SymbolId> rest;
      for (SymbolId item : halves[0].items()) {
        if (item != c) rest.push_back(item);
      }
      q = learner(Dataset(s.domain_ptr(), std::move(rest)), seed);
    } else {
      q = model_of_half(in0 ? 1 : 0);
    }
    if (!q.ok()) return q.status();
    ids.push_back(s.domain().symbol(c));
    models.push_back(*std::move(q));
  }
  return SafeAssignment::Create(std::move(ids), std::move(models));
}

absl::StatusOr<double> NafAlpha(const DiscreteDistribution& p,
                                const SafeAssignment& safes) {
  if (absl::Status s = CheckModelDomain(p, safes); !s.ok()) return s;
  double alpha = 0.0;
  for (const DiscreteDistribution& q : safes.models()) {
    for (size_t z = 0; z < p.size(); ++z) {
      alpha = std::max(alpha, LogRatio(p.weights()[z], q.weights()[z]));
    }
  }
  return alpha;
}

absl::StatusOr<NafCheck> IsNaf(const DiscreteDistribution& p,
                               const SafeAssignment& safes, double alpha) {
  if (!(alpha >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be >= 0, got ", alpha));
  }
  if (absl::Status s = CheckModelDomain(p, safes); !s.ok()) return s;
  NafCheck check{true, {}};
  for (size_t c = 0; c < safes.size(); ++c) {
    const DiscreteDistribution& q = safes.model(c);
    for (size_t z = 0; z < p.size(); ++z) {
      const double ratio = LogRatio(p.weights()[z], q.weights()[z]);
      if (ratio > alpha) {
        check.violations.push_back(
            {safes.ids()[c], static_cast<SymbolId>(z), ratio});
      }
    }
  }
  check.naf = check.violations.empty();
  return check;
}

absl::StatusOr<double> FeasibilityAlpha(const SafeAssignment& safes) {
  if (absl::Status s = CheckNonEmpty(safes); !s.ok()) return s;
  absl::StatusOr<std::vector<double>> env = MinEnvelope(safes.models());
  if (!env.ok()) return env.status();
  double mass = 0.0;
  for (double v : *env) mass += v;
  if (mass <= 0.0) return kInf;
  return std::max(0.0, -std::log(mass));
}

absl::StatusOr<Censorship> CensorshipReport(const SafeAssignment& safes,
                                            double alpha) {
  if (!(alpha >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be >= 0, got ", alpha));
  }
  if (absl::Status s = CheckNonEmpty(safes); !s.ok()) return s;
  absl::StatusOr<std::vector<double>> env = MinEnvelope(safes.models());
  if (!env.ok()) return env.status();
  Censorship out{alpha, {}, 0.0, 0.0};
  const double scale = std::exp(alpha);
  out.allowed.reserve(env->size());
  for (double v : *env) {
    out.allowed.push_back(std::min(1.0, scale * v));
    out.allowed_mass += out.allowed.back();
  }
  out.deficit = std::max(0.0, 1.0 - out.allowed_mass);
  return out;
}

absl::StatusOr<NafReport> BuildNafReport(const DiscreteDistribution& p,
                                         const SafeAssignment& safes,
                                         double alpha) {
  absl::StatusOr<NafCheck> check = IsNaf(p, safes, alpha);
  if (!check.ok()) return check.status();
  absl::StatusOr<double> alpha_star = NafAlpha(p, safes);
  if (!alpha_star.ok()) return alpha_star.status();
  absl::StatusOr<double> feasibility = FeasibilityAlpha(safes);
  if (!feasibility.ok()) return feasibility.status();
  absl::StatusOr<Censorship> censorship = CensorshipReport(safes, alpha);
  if (!censorship.ok()) return censorship.status();
  return NafReport{alpha, *alpha_star, std::move(check->violations),
                   *feasibility, *std::move(censorship)};
}

absl::StatusOr<NflWitness> FindNflWitness(const DiscreteDistribution& p,
                                          const DiscreteDistribution& q1,
                                          const DiscreteDistribution& q2) {
  if (absl::Status s = CheckSameDomain(p.domain(), q1.domain()); !s.ok()) {
    return s;
  }
  absl::StatusOr<double> tv = TvDistance(q1, q2);
  if (!tv.ok()) return tv.status();
  if (1.0 - *tv <= kNflTolerance) {
    return absl::FailedPreconditionError(
        "degenerate TV: tv(q1, q2) = 1 makes the no-free-lunch bound vacuous");
  }
  const double scale = 1.0 / (2.0 * (1.0 - *tv));
  NflWitness best{0, 0.0, 0.0, *tv, false};
  double best_slack = -kInf;
  for (size_t z = 0; z < p.size(); ++z) {
    const double threshold = scale * std::min(q1.weights()[z], q2.weights()[z]);
    const double slack = p.weights()[z] - threshold;
    if (slack > best_slack) {
      best_slack = slack;
      best = {static_cast<SymbolId>(z), p.weights()[z], threshold, *tv, false};
    }
  }
  best.holds = best_slack >= -kNflTolerance;
  return best;
}

void ForEachSimplexGridPoint(
    size_t dimension, int steps,
    const std::function<void(absl::Span<const int>)>& visit) {
  if (dimension == 0 || steps < 0) return;
  std::vector<int> point(dimension, 0);
  // Fill coordinates left to right; the last one takes the remainder.
  std::function<void(size_t, int)> fill = [&](size_t i, int remaining) {
    if (i + 1 == dimension) {
      point[i] = remaining;
      visit(point);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      point[i] = v;
      fill(i + 1, remaining - v);
    }
  };
  fill(0, steps);
}

absl::StatusOr<NflGridResult> CheckNflOnGrid(const DiscreteDistribution& q1,
                                             const DiscreteDistribution& q2,
                                             int steps) {
  if (steps < 1) {
    return absl::InvalidArgumentError("grid needs at least one step");
  }
  std::vector<std::vector<double>> grid;
  ForEachSimplexGridPoint(q1.size(), steps, [&](absl::Span<const int> point) {
    std::vector<double> w(point.size());
    for (size_t i = 0; i < w.size(); ++i) {
      w[i] = static_cast<double>(point[i]) / steps;
    }
    grid.push_back(std::move(w));
  });

  std::vector<absl::StatusOr<NflWitness>> results(
      grid.size(), absl::UnknownError("not evaluated"));
  ParallelFor(grid.size(), [&](size_t i) {
    absl::StatusOr<DiscreteDistribution> p =
        DiscreteDistribution::Create(q1.domain_ptr(), grid[i]);
    results[i] = p.ok() ? FindNflWitness(*p, q1, q2)
                        : absl::StatusOr<NflWitness>(p.status());
  });

  NflGridResult out;
  out.min_slack = kInf;
  for (const absl::StatusOr<NflWitness>& w : results) {
    if (!w.ok()) return w.status();
    ++out.points;
    if (!w->holds) ++out.failures;
    out.min_slack = std::min(out.min_slack, w->p_value - w->threshold);
  }
  return out;
}

}  // namespace stability_lab
