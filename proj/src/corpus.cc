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

#include "stability_lab/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace stability_lab {

absl::StatusOr<Tokenization> ParseTokenization(const std::string& name) {
  if (name == "line") return Tokenization::kLine;
  if (name == "whitespace") return Tokenization::kWhitespace;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown tokenization '", name, "' (expected line or whitespace)"));
}

absl::StatusOr<Corpus> IngestCorpus(const std::string& path,
                                    Tokenization tokenization) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::string> tokens;
  if (tokenization == Tokenization::kLine) {
    for (absl::string_view line : absl::StrSplit(text, '\n')) {
      line = absl::StripSuffix(line, "\r");
      if (!line.empty()) tokens.emplace_back(line);
    }
  } else {
    for (absl::string_view tok : absl::StrSplit(
             text, absl::ByAnyChar(" \t\r\n\f\v"), absl::SkipEmpty())) {
      tokens.emplace_back(tok);
    }
  }
  if (tokens.empty()) {
    return absl::InvalidArgumentError(absl::StrCat("empty corpus: ", path));
  }

  std::vector<std::string> symbols = tokens;
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  absl::StatusOr<DomainPtr> domain = ContentDomain::Create(std::move(symbols));
  if (!domain.ok()) return domain.status();
  absl::StatusOr<Dataset> dataset = Dataset::FromSymbols(*domain, tokens);
  if (!dataset.ok()) return dataset.status();
  return Corpus{*domain, *std::move(dataset)};
}

}  // namespace stability_lab
