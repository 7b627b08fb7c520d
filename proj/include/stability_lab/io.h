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

// JSON and plain-text encodings of domains, distributions, datasets and
// reports.
//
//   domain:        {"symbols": [...]}
//   distribution:  {"symbols": [...], "weights": [...]}
//   histogram:     {"epsilon": e, "delta": d, "k": k, "tau": t,
//                   "values": {symbol: a(z), ...}}
//   dataset file:  one symbol per line

#ifndef STABILITY_LAB_IO_H_
#define STABILITY_LAB_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "stability_lab/content.h"
#include "stability_lab/dp_mech.h"
#include "stability_lab/naf.h"

namespace stability_lab {

using Json = nlohmann::ordered_json;

Json DomainToJson(const ContentDomain& domain);
absl::StatusOr<DomainPtr> DomainFromJson(const Json& j);

Json DistributionToJson(const DiscreteDistribution& q);
absl::StatusOr<DiscreteDistribution> DistributionFromJson(const Json& j);

Json HistogramToJson(const NoisyHistogram& a);

Json NafReportToJson(const NafReport& report, const ContentDomain& domain);

// Infinite values are written as the string "inf".
Json RealToJson(double x);

absl::StatusOr<Json> ReadJsonFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, const std::string& text);

// One symbol per line; blank lines are skipped. Every symbol must belong to
// the domain.
absl::StatusOr<Dataset> LoadDatasetFile(DomainPtr domain,
                                        const std::string& path);

}  // namespace stability_lab

#endif  // STABILITY_LAB_IO_H_
