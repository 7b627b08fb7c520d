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

#ifndef STABILITY_LAB_CORPUS_H_
#define STABILITY_LAB_CORPUS_H_

#include <string>

#include "absl/status/statusor.h"
#include "stability_lab/content.h"

namespace stability_lab {

enum class Tokenization { kLine, kWhitespace };

absl::StatusOr<Tokenization> ParseTokenization(const std::string& name);

struct Corpus {
  DomainPtr domain;  // sorted distinct tokens
  Dataset dataset;   // tokens in file order
};

// Reads a text file into a domain and a dataset. Deterministic. Fails with
// NotFound when the file is unreadable and InvalidArgument when it has no
// tokens.
absl::StatusOr<Corpus> IngestCorpus(const std::string& path,
                                    Tokenization tokenization);

}  // namespace stability_lab

#endif  // STABILITY_LAB_CORPUS_H_
