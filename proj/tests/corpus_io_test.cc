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

#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "stability_lab/content.h"
#include "stability_lab/corpus.h"
#include "stability_lab/dp_mech.h"
#include "stability_lab/io.h"
#include "stability_lab/naf.h"
#include "stability_lab/random.h"
#include "testing/stat_util.h"

namespace stability_lab {
namespace {

using ::stability_lab::testing::Dist;
using ::stability_lab::testing::MakeDomain;
using ::stability_lab::testing::RandomDistribution;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

std::string WriteTemp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

TEST(IngestCorpusTest, LinesInFileOrder) {
  const std::string path = WriteTemp("abc.txt", "a\nb\na\n");
  const Corpus corpus = *IngestCorpus(path, Tokenization::kLine);
  EXPECT_THAT(corpus.domain->symbols(), ElementsAre("a", "b"));
  EXPECT_THAT(corpus.dataset.items(), ElementsAre(0u, 1u, 0u));
}

TEST(IngestCorpusTest, DomainIsSortedDistinctTokens) {
  const std::string path =
      WriteTemp("words.txt", "pear apple\n\n  fig pear\tapple\n");
  const Corpus corpus = *IngestCorpus(path, Tokenization::kWhitespace);
  EXPECT_THAT(corpus.domain->symbols(), ElementsAre("apple", "fig", "pear"));
  EXPECT_THAT(corpus.dataset.items(), ElementsAre(2u, 0u, 1u, 2u, 0u));

  const Corpus lines = *IngestCorpus(path, Tokenization::kLine);
  EXPECT_THAT(lines.domain->symbols(),
              ElementsAre("  fig pear\tapple", "pear apple"));
  EXPECT_EQ(lines.dataset.size(), 2u);
}

TEST(IngestCorpusTest, Deterministic) {
  const std::string path = WriteTemp("det.txt", "x y z\nz y\n");
  const Corpus first = *IngestCorpus(path, Tokenization::kWhitespace);
  const Corpus second = *IngestCorpus(path, Tokenization::kWhitespace);
  EXPECT_EQ(first.domain->symbols(), second.domain->symbols());
  EXPECT_EQ(first.dataset.items(), second.dataset.items());
}

TEST(IngestCorpusTest, Errors) {
  absl::StatusOr<Corpus> empty =
      IngestCorpus(WriteTemp("empty.txt", "\n\n"), Tokenization::kLine);
  ASSERT_FALSE(empty.ok());
  EXPECT_EQ(empty.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(empty.status().message(), HasSubstr("empty corpus"));

  absl::StatusOr<Corpus> missing =
      IngestCorpus(::testing::TempDir() + "/no/such/file", Tokenization::kLine);
  ASSERT_FALSE(missing.ok());
  EXPECT_EQ(missing.status().code(), absl::StatusCode::kNotFound);

  EXPECT_TRUE(ParseTokenization("line").ok());
  EXPECT_FALSE(ParseTokenization("bytes").ok());
}

TEST(JsonTest, DistributionRoundTrip) {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    DomainPtr d = MakeDomain(1 + rng.Below(15));
    const DiscreteDistribution q = RandomDistribution(d, rng, 0.2);
    const Json j = DistributionToJson(q);
    const DiscreteDistribution back =
        *DistributionFromJson(Json::parse(j.dump()));
    EXPECT_EQ(back.domain().symbols(), d->symbols());
    EXPECT_EQ(back.weights(), q.weights());
  }
}

TEST(JsonTest, DomainRoundTrip) {
  DomainPtr d = *ContentDomain::Create({"b", "a", "the cat"});
  const DomainPtr back = *DomainFromJson(Json::parse(DomainToJson(*d).dump()));
  EXPECT_EQ(back->symbols(), d->symbols());
  EXPECT_FALSE(DomainFromJson(Json{{"symbols", {"a", "a"}}}).ok());
  EXPECT_FALSE(DomainFromJson(Json::array()).ok());
}

TEST(JsonTest, DistributionErrors) {
  EXPECT_THAT(
      DistributionFromJson(Json{{"symbols", {"a", "b"}}, {"weights", {0.5}}})
          .status()
          .message(),
      HasSubstr("length mismatch"));
  EXPECT_THAT(DistributionFromJson(
                  Json{{"symbols", {"a", "b"}}, {"weights", {0.5, 0.6}}})
                  .status()
                  .message(),
              HasSubstr("not normalized"));
  EXPECT_FALSE(DistributionFromJson(Json{{"symbols", {"a"}}}).ok());
}

TEST(JsonTest, RealsAndHistogram) {
  EXPECT_EQ(RealToJson(std::numeric_limits<double>::infinity()), Json("inf"));
  EXPECT_EQ(RealToJson(0.25), Json(0.25));

  DomainPtr d = MakeDomain(2);
  const NoisyHistogram a =
      *PrivateHistogram(Dataset(d, {0, 0, 1}), 1.0, 1e-3, 4);
  const Json j = HistogramToJson(a);
  EXPECT_EQ(j["k"], 3);
  EXPECT_EQ(j["values"]["z0"], a.values[0]);
  EXPECT_EQ(j["values"]["z1"], a.values[1]);
}

TEST(JsonTest, NafReportFields) {
  DomainPtr d = MakeDomain(2);
  const DiscreteDistribution p = Dist(d, {1.0, 0.0});
  const SafeAssignment safes =
      *SafeAssignment::Create({"c"}, {Dist(d, {0.0, 1.0})});
  const Json j = NafReportToJson(*BuildNafReport(p, safes, 1.0), *d);
  EXPECT_EQ(j["alpha_star"], "inf");
  EXPECT_EQ(j["naf"], false);
  EXPECT_EQ(j["feasibility_alpha"], 0.0);  // a single safe model
  ASSERT_EQ(j["violations"].size(), 1u);
}

TEST(DatasetFileTest, LoadAndErrors) {
  DomainPtr d = *ContentDomain::Create({"a", "b"});
  const Dataset s = *LoadDatasetFile(d, WriteTemp("ds.txt", "b\n\na\nb\n"));
  EXPECT_THAT(s.items(), ElementsAre(1u, 0u, 1u));
  EXPECT_FALSE(LoadDatasetFile(d, WriteTemp("bad.txt", "a\nc\n")).ok());
  EXPECT_FALSE(LoadDatasetFile(d, ::testing::TempDir() + "/absent.txt").ok());
}

TEST(JsonFileTest, ReadWrite) {
  const std::string path = ::testing::TempDir() + "/doc.json";
  ASSERT_TRUE(WriteTextFile(path, "{\"x\": [1, 2]}").ok());
  EXPECT_EQ((*ReadJsonFile(path))["x"][1], 2);
  EXPECT_FALSE(ReadJsonFile(WriteTemp("broken.json", "{")).ok());
}

}  // namespace
}  // namespace stability_lab
