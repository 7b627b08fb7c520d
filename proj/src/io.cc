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

#include "stability_lab/io.h"

#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"

namespace stability_lab {

Json RealToJson(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json DomainToJson(const ContentDomain& domain) {
  return Json{{"symbols", domain.symbols()}};
}

absl::StatusOr<DomainPtr> DomainFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("symbols") || !j["symbols"].is_array()) {
    return absl::InvalidArgumentError("domain JSON needs a \"symbols\" array");
  }
  std::vector<std::string> symbols;
  for (const Json& s : j["symbols"]) {
    if (!s.is_string()) {
      return absl::InvalidArgumentError("domain symbols must be strings");
    }
    symbols.push_back(s.get<std::string>());
  }
  return ContentDomain::Create(std::move(symbols));
}

Json DistributionToJson(const DiscreteDistribution& q) {
  return Json{
      {"symbols", q.domain().symbols()},
      {"weights", std::vector<double>(q.weights().begin(), q.weights().end())}};
}

absl::StatusOr<DiscreteDistribution> DistributionFromJson(const Json& j) {
  absl::StatusOr<DomainPtr> domain = DomainFromJson(j);
  if (!domain.ok()) return domain.status();
  if (!j.contains("weights") || !j["weights"].is_array()) {
    return absl::InvalidArgumentError(
        "distribution JSON needs a \"weights\" array");
  }
  std::vector<double> weights;
  for (const Json& w : j["weights"]) {
    if (!w.is_number()) {
      return absl::InvalidArgumentError("distribution weights must be numbers");
    }
    weights.push_back(w.get<double>());
  }
  return DiscreteDistribution::Create(*std::move(domain), std::move(weights));
}

Json HistogramToJson(const NoisyHistogram& a) {
  Json values = Json::object();
  for (size_t z = 0; z < a.values.size(); ++z) {
    values[a.domain->symbol(static_cast<SymbolId>(z))] = a.values[z];
  }
  return Json{{"epsilon", a.epsilon},
              {"delta", a.delta},
              {"k", a.k},
              {"tau", a.tau},
              {"values", std::move(values)}};
}

Json NafReportToJson(const NafReport& report, const ContentDomain& domain) {
  Json violations = Json::array();
  for (const NafViolation& v : report.violations) {
    violations.push_back({{"content", v.content},
                          {"z", domain.symbol(v.z)},
                          {"log_ratio", RealToJson(v.log_ratio)}});
  }
  const Censorship& c = report.censorship;
  return Json{{"alpha", report.alpha},
              {"alpha_star", RealToJson(report.alpha_star)},
              {"naf", report.violations.empty()},
              {"violations", std::move(violations)},
              {"feasibility_alpha", RealToJson(report.feasibility_alpha)},
              {"censorship",
               {{"alpha", c.alpha},
                {"allowed", c.allowed},
                {"allowed_mass", c.allowed_mass},
                {"deficit", c.deficit}}}};
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat("malformed JSON in ", path));
  }
  return j;
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << text;
  if (!out) return absl::UnavailableError(absl::StrCat("error writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<Dataset> LoadDatasetFile(DomainPtr domain,
                                        const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::vector<SymbolId> items;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    absl::string_view symbol = absl::StripSuffix(line, "\r");
    if (symbol.empty()) continue;
    absl::StatusOr<SymbolId> id = domain->Find(symbol);
    if (!id.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_no, ": ", id.status().message()));
    }
    items.push_back(*id);
  }
  return Dataset(std::move(domain), std::move(items));
}

}  // namespace stability_lab
