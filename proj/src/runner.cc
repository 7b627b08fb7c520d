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

#include "stability_lab/runner.h"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "stability_lab/content.h"
#include "stability_lab/corpus.h"
#include "stability_lab/dp_mech.h"
#include "stability_lab/learner.h"
#include "stability_lab/naf.h"
#include "stability_lab/random.h"
#include "stability_lab/transform.h"

namespace stability_lab {
namespace {

// Propagates a non-OK status out of a function returning Status or StatusOr.
#define SL_RETURN_IF_ERROR(expr)                \
  do {                                          \
    if (absl::Status _st = (expr); !_st.ok()) { \
      return _st;                               \
    }                                           \
  } while (0)

#define SL_CONCAT_INNER(a, b) a##b
#define SL_CONCAT(a, b) SL_CONCAT_INNER(a, b)
#define SL_ASSIGN_OR_RETURN(lhs, expr) \
  SL_ASSIGN_OR_RETURN_IMPL(SL_CONCAT(_statusor_, __LINE__), lhs, expr)
#define SL_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                             \
  if (!tmp.ok()) return tmp.status();            \
  lhs = *std::move(tmp)

absl::Status ConfigError(absl::string_view path, absl::string_view reason) {
  return absl::InvalidArgumentError(
      absl::StrCat("config error at ", path, ": ", reason));
}

// Typed access to a config document; every error names the offending field.
class ConfigReader {
 public:
  ConfigReader(const Json& root, std::string base_dir)
      : root_(root), base_dir_(std::move(base_dir)) {}

  const Json* Find(absl::string_view path) const {
    const Json* node = &root_;
    for (absl::string_view key : absl::StrSplit(path, '.')) {
      if (!node->is_object()) return nullptr;
      auto it = node->find(std::string(key));
      if (it == node->end()) return nullptr;
      node = &*it;
    }
    return node;
  }

  bool Has(absl::string_view path) const { return Find(path) != nullptr; }

  absl::StatusOr<double> Real(
      absl::string_view path,
      std::optional<double> fallback = std::nullopt) const {
    const Json* node = Find(path);
    if (node == nullptr) {
      if (fallback.has_value()) return *fallback;
      return ConfigError(path, "required number is missing");
    }
    if (!node->is_number()) return ConfigError(path, "expected a number");
    return node->get<double>();
  }

  absl::StatusOr<int64_t> Int(
      absl::string_view path, int64_t min_value,
      std::optional<int64_t> fallback = std::nullopt) const {
    const Json* node = Find(path);
    int64_t value;
    if (node == nullptr) {
      if (!fallback.has_value()) {
        return ConfigError(path, "required integer is missing");
      }
      value = *fallback;
    } else {
      if (!node->is_number_integer()) {
        return ConfigError(path, "expected an integer");
      }
      value = node->get<int64_t>();
    }
    if (value < min_value) {
      return ConfigError(path, absl::StrCat("must be >= ", min_value));
    }
    return value;
  }

  absl::StatusOr<std::string> String(
      absl::string_view path,
      std::optional<std::string> fallback = std::nullopt) const {
    const Json* node = Find(path);
    if (node == nullptr) {
      if (fallback.has_value()) return *fallback;
      return ConfigError(path, "required string is missing");
    }
    if (!node->is_string()) return ConfigError(path, "expected a string");
    return node->get<std::string>();
  }

  std::string Resolve(const std::string& file) const {
    std::filesystem::path p(file);
    if (p.is_absolute()) return file;
    return (std::filesystem::path(base_dir_) / p).string();
  }

  // Inline {"symbols", "weights"} object, or a path to a JSON file with one.
  absl::StatusOr<DiscreteDistribution> Distribution(
      absl::string_view path) const {
    const Json* node = Find(path);
    if (node == nullptr)
      return ConfigError(path, "required distribution is missing");
    return DistributionAt(*node, path);
  }

  absl::StatusOr<DiscreteDistribution> DistributionAt(
      const Json& node, absl::string_view path) const {
    Json doc;
    if (node.is_string()) {
      absl::StatusOr<Json> loaded =
          ReadJsonFile(Resolve(node.get<std::string>()));
      if (!loaded.ok()) return ConfigError(path, loaded.status().message());
      doc = *std::move(loaded);
    } else {
      doc = node;
    }
    absl::StatusOr<DiscreteDistribution> q = DistributionFromJson(doc);
    if (!q.ok()) return ConfigError(path, q.status().message());
    return q;
  }

  // Inline {"symbols"} object, or a path to a JSON file with one.
  absl::StatusOr<DomainPtr> Domain(absl::string_view path) const {
    const Json* node = Find(path);
    if (node == nullptr) return ConfigError(path, "required domain is missing");
    Json doc;
    if (node->is_string()) {
      absl::StatusOr<Json> loaded =
          ReadJsonFile(Resolve(node->get<std::string>()));
      if (!loaded.ok()) return ConfigError(path, loaded.status().message());
      doc = *std::move(loaded);
    } else {
      doc = *node;
    }
    absl::StatusOr<DomainPtr> domain = DomainFromJson(doc);
    if (!domain.ok()) return ConfigError(path, domain.status().message());
    return domain;
  }

  // Path to a one-symbol-per-line file, or an inline array of symbols.
  absl::StatusOr<Dataset> DatasetAt(absl::string_view path,
                                    DomainPtr domain) const {
    const Json* node = Find(path);
    if (node == nullptr)
      return ConfigError(path, "required dataset is missing");
    if (node->is_string()) {
      absl::StatusOr<Dataset> s =
          LoadDatasetFile(std::move(domain), Resolve(node->get<std::string>()));
      if (!s.ok()) return ConfigError(path, s.status().message());
      return s;
    }
    if (!node->is_array()) {
      return ConfigError(path, "expected a file path or an array of symbols");
    }
    std::vector<std::string> symbols;
    for (const Json& s : *node) {
      if (!s.is_string()) return ConfigError(path, "symbols must be strings");
      symbols.push_back(s.get<std::string>());
    }
    absl::StatusOr<Dataset> s =
        Dataset::FromSymbols(std::move(domain), symbols);
    if (!s.ok()) return ConfigError(path, s.status().message());
    return s;
  }

  // {"kind": "empirical", "lambda": x} or {"kind": "constant", "model": dist}.
  absl::StatusOr<Learner> LearnerAt(absl::string_view path) const {
    SL_ASSIGN_OR_RETURN(std::string kind,
                        String(absl::StrCat(path, ".kind"), "empirical"));
    if (kind == "empirical") {
      const std::string lambda_path = absl::StrCat(path, ".lambda");
      SL_ASSIGN_OR_RETURN(double lambda, Real(lambda_path, 0.0));
      absl::StatusOr<Learner> learner = EmpiricalLearner(lambda);
      if (!learner.ok())
        return ConfigError(lambda_path, learner.status().message());
      return learner;
    }
    if (kind == "constant") {
      SL_ASSIGN_OR_RETURN(DiscreteDistribution q,
                          Distribution(absl::StrCat(path, ".model")));
      return ConstantLearner(std::move(q));
    }
    return ConfigError(absl::StrCat(path, ".kind"),
                       "expected \"empirical\" or \"constant\"");
  }

  absl::StatusOr<DpParams> Dp(bool need_eta) const {
    DpParams dp;
    SL_ASSIGN_OR_RETURN(dp.epsilon, Real("dp.epsilon"));
    SL_ASSIGN_OR_RETURN(dp.delta, Real("dp.delta"));
    if (need_eta) {
      SL_ASSIGN_OR_RETURN(dp.eta, Real("dp.eta"));
    } else {
      SL_ASSIGN_OR_RETURN(dp.eta, Real("dp.eta", 0.1));
    }
    SL_ASSIGN_OR_RETURN(dp.beta, Real("dp.beta", dp.eta));
    if (absl::Status s = ValidateDpParams(dp); !s.ok()) {
      return ConfigError("dp", s.message());
    }
    return dp;
  }

 private:
  const Json& root_;
  std::string base_dir_;
};

absl::StatusOr<double> NonNegativeAlpha(const ConfigReader& cfg,
                                        absl::string_view path) {
  SL_ASSIGN_OR_RETURN(double alpha, cfg.Real(path));
  if (!(alpha >= 0.0)) return ConfigError(path, "must be >= 0");
  return alpha;
}

// Explicit "safes": [{"id", "model"}, ...] or a construction
// "safe_construction": {"method", "dataset", "learner"} over `domain`.
absl::StatusOr<SafeAssignment> ReadSafes(const ConfigReader& cfg,
                                         const DomainPtr& domain,
                                         uint64_t seed) {
  if (const Json* list = cfg.Find("safes"); list != nullptr) {
    if (!list->is_array() || list->empty()) {
      return ConfigError("safes", "expected a non-empty array");
    }
    std::vector<std::string> ids;
    std::vector<DiscreteDistribution> models;
    for (size_t i = 0; i < list->size(); ++i) {
      const std::string base = absl::StrCat("safes.", i);
      const Json& entry = (*list)[i];
      if (!entry.is_object() || !entry.contains("id") ||
          !entry["id"].is_string() || !entry.contains("model")) {
        return ConfigError(base, "expected {\"id\": string, \"model\": ...}");
      }
      SL_ASSIGN_OR_RETURN(
          DiscreteDistribution q,
          cfg.DistributionAt(entry["model"], absl::StrCat(base, ".model")));
      ids.push_back(entry["id"].get<std::string>());
      models.push_back(std::move(q));
    }
    absl::StatusOr<SafeAssignment> safes =
        SafeAssignment::Create(std::move(ids), std::move(models));
    if (!safes.ok()) return ConfigError("safes", safes.status().message());
    return safes;
  }
  if (cfg.Has("safe_construction")) {
    if (domain == nullptr) {
      return ConfigError("safe_construction", "needs a domain (from \"p\")");
    }
    SL_ASSIGN_OR_RETURN(std::string method,
                        cfg.String("safe_construction.method"));
    SL_ASSIGN_OR_RETURN(Dataset s,
                        cfg.DatasetAt("safe_construction.dataset", domain));
    SL_ASSIGN_OR_RETURN(Learner learner,
                        cfg.LearnerAt("safe_construction.learner"));
    const uint64_t safe_seed = DeriveSeed(seed, "safe", 0);
    absl::StatusOr<SafeAssignment> safes;
    if (method == "leave_one_out") {
      safes = SafeLeaveOneOut(learner, s, safe_seed);
    } else if (method == "sharded") {
      safes = SafeSharded(learner, s, safe_seed);
    } else {
      return ConfigError("safe_construction.method",
                         "expected \"leave_one_out\" or \"sharded\"");
    }
    if (!safes.ok()) {
      return ConfigError("safe_construction", safes.status().message());
    }
    return safes;
  }
  return ConfigError("safes", "need \"safes\" or \"safe_construction\"");
}

Json SafesToJson(const SafeAssignment& safes) {
  Json out = Json::array();
  for (size_t i = 0; i < safes.size(); ++i) {
    out.push_back({{"id", safes.ids()[i]},
                   {"model", DistributionToJson(safes.model(i))}});
  }
  return out;
}

struct Outcome {
  Json result;
  bool pass = true;
  std::string csv;
};

absl::StatusOr<Outcome> RunTv(const ConfigReader& cfg) {
  SL_ASSIGN_OR_RETURN(DiscreteDistribution q1, cfg.Distribution("q1"));
  SL_ASSIGN_OR_RETURN(DiscreteDistribution q2, cfg.Distribution("q2"));
  absl::StatusOr<double> tv = TvDistance(q1, q2);
  if (!tv.ok()) return ConfigError("q2", tv.status().message());
  Outcome out;
  out.result["tv"] = *tv;
  if (q1.size() <= kMaxEnumerableDomain) {
    SL_ASSIGN_OR_RETURN(EventValue ev, TvEventForm(q1, q2));
    out.result["event_form"] = {{"value", ev.value},
                                {"event", ev.event.Symbols()}};
  }
  return out;
}

absl::StatusOr<Outcome> RunNafCheck(const ConfigReader& cfg, uint64_t seed) {
  SL_ASSIGN_OR_RETURN(DiscreteDistribution p, cfg.Distribution("p"));
  SL_ASSIGN_OR_RETURN(double alpha, NonNegativeAlpha(cfg, "alpha"));
  SL_ASSIGN_OR_RETURN(SafeAssignment safes,
                      ReadSafes(cfg, p.domain_ptr(), seed));
  absl::StatusOr<NafReport> report = BuildNafReport(p, safes, alpha);
  if (!report.ok()) return ConfigError("safes", report.status().message());
  Outcome out;
  out.result = NafReportToJson(*report, p.domain());
  if (cfg.Has("safe_construction")) out.result["safes"] = SafesToJson(safes);
  out.pass = report->violations.empty();
  return out;
}

Json WitnessToJson(const NflWitness& w, const ContentDomain& domain) {
  return Json{{"z", domain.symbol(w.z)},
              {"p_z", w.p_value},
              {"threshold", w.threshold},
              {"tv", w.tv},
              {"holds", w.holds}};
}

absl::StatusOr<Outcome> RunNflCheck(const ConfigReader& cfg) {
  SL_ASSIGN_OR_RETURN(DiscreteDistribution q1, cfg.Distribution("q1"));
  SL_ASSIGN_OR_RETURN(DiscreteDistribution q2, cfg.Distribution("q2"));
  if (absl::Status s = CheckSameDomain(q1.domain(), q2.domain()); !s.ok()) {
    return ConfigError("q2", s.message());
  }
  Outcome out;
  if (cfg.Has("p")) {
    SL_ASSIGN_OR_RETURN(DiscreteDistribution p, cfg.Distribution("p"));
    absl::StatusOr<NflWitness> w = FindNflWitness(p, q1, q2);
    if (!w.ok()) return w.status();
    out.result["witness"] = WitnessToJson(*w, p.domain());
    out.pass = out.pass && w->holds;
  }
  if (cfg.Has("grid_steps") || !cfg.Has("p")) {
    SL_ASSIGN_OR_RETURN(int64_t steps, cfg.Int("grid_steps", 1, 20));
    absl::StatusOr<NflGridResult> grid =
        CheckNflOnGrid(q1, q2, static_cast<int>(steps));
    if (!grid.ok()) return grid.status();
    out.result["grid"] = {{"steps", steps},
                          {"points", grid->points},
                          {"failures", grid->failures},
                          {"min_slack", grid->min_slack}};
    out.pass = out.pass && grid->failures == 0;
  }
  return out;
}

absl::StatusOr<Outcome> RunCensorship(const ConfigReader& cfg, uint64_t seed) {
  SL_ASSIGN_OR_RETURN(double alpha, NonNegativeAlpha(cfg, "alpha"));
  DomainPtr domain;
  if (cfg.Has("p")) {
    SL_ASSIGN_OR_RETURN(DiscreteDistribution p, cfg.Distribution("p"));
    domain = p.domain_ptr();
  } else if (cfg.Has("domain")) {
    SL_ASSIGN_OR_RETURN(domain, cfg.Domain("domain"));
  }
  SL_ASSIGN_OR_RETURN(SafeAssignment safes, ReadSafes(cfg, domain, seed));
  absl::StatusOr<Censorship> c = CensorshipReport(safes, alpha);
  if (!c.ok()) return ConfigError("safes", c.status().message());
  SL_ASSIGN_OR_RETURN(double feasibility, FeasibilityAlpha(safes));
  Outcome out;
  out.result = {
      {"alpha", alpha},        {"symbols", safes.model(0).domain().symbols()},
      {"allowed", c->allowed}, {"allowed_mass", c->allowed_mass},
      {"deficit", c->deficit}, {"feasibility_alpha", RealToJson(feasibility)}};
  return out;
}

absl::StatusOr<Outcome> RunDpBeta(const ConfigReader& cfg) {
  SL_ASSIGN_OR_RETURN(DiscreteDistribution p, cfg.Distribution("p"));
  SL_ASSIGN_OR_RETURN(DiscreteDistribution p_prime,
                      cfg.Distribution("p_prime"));
  if (absl::Status s = CheckSameDomain(p.domain(), p_prime.domain()); !s.ok()) {
    return ConfigError("p_prime", s.message());
  }
  std::vector<double> alphas;
  if (const Json* list = cfg.Find("alphas"); list != nullptr) {
    if (!list->is_array()) return ConfigError("alphas", "expected an array");
    for (size_t i = 0; i < list->size(); ++i) {
      if (!(*list)[i].is_number() || (*list)[i].get<double>() < 0.0) {
        return ConfigError(absl::StrCat("alphas.", i),
                           "expected a number >= 0");
      }
      alphas.push_back((*list)[i].get<double>());
    }
  } else {
    SL_ASSIGN_OR_RETURN(double alpha, NonNegativeAlpha(cfg, "alpha"));
    alphas.push_back(alpha);
  }
  Outcome out;
  out.result["curve"] = Json::array();
  out.csv = "alpha,beta,beta_reverse,symmetric_beta\n";
  for (double alpha : alphas) {
    SL_ASSIGN_OR_RETURN(double forward, DpBeta(p, p_prime, alpha));
    SL_ASSIGN_OR_RETURN(double backward, DpBeta(p_prime, p, alpha));
    out.result["curve"].push_back(
        {{"alpha", alpha},
         {"beta", forward},
         {"beta_reverse", backward},
         {"symmetric_beta", std::max(forward, backward)}});
    absl::StrAppend(&out.csv, alpha, ",", forward, ",", backward, ",",
                    std::max(forward, backward), "\n");
  }
  if (cfg.Has("check")) {
    SL_ASSIGN_OR_RETURN(double alpha, NonNegativeAlpha(cfg, "check.alpha"));
    SL_ASSIGN_OR_RETURN(double delta, cfg.Real("check.delta"));
    SL_ASSIGN_OR_RETURN(double beta, SymmetricDpBeta(p, p_prime, alpha));
    out.pass = beta <= delta;
    out.result["check"] = {{"alpha", alpha},
                           {"delta", delta},
                           {"symmetric_beta", beta},
                           {"pass", out.pass}};
  }
  return out;
}

// Domain and dataset from "corpus" or from "domain" + "dataset".
absl::StatusOr<Corpus> ReadDomainAndDataset(const ConfigReader& cfg,
                                            absl::string_view dataset_field) {
  if (cfg.Has("corpus")) {
    SL_ASSIGN_OR_RETURN(std::string path, cfg.String("corpus.path"));
    SL_ASSIGN_OR_RETURN(std::string tok_name,
                        cfg.String("corpus.tokenization", "line"));
    absl::StatusOr<Tokenization> tok = ParseTokenization(tok_name);
    if (!tok.ok())
      return ConfigError("corpus.tokenization", tok.status().message());
    absl::StatusOr<Corpus> corpus = IngestCorpus(cfg.Resolve(path), *tok);
    if (!corpus.ok())
      return ConfigError("corpus.path", corpus.status().message());
    return corpus;
  }
  SL_ASSIGN_OR_RETURN(DomainPtr domain, cfg.Domain("domain"));
  SL_ASSIGN_OR_RETURN(Dataset s, cfg.DatasetAt(dataset_field, domain));
  return Corpus{domain, std::move(s)};
}

absl::StatusOr<Outcome> RunHist(const ConfigReader& cfg, uint64_t seed) {
  SL_ASSIGN_OR_RETURN(Corpus input, ReadDomainAndDataset(cfg, "dataset"));
  SL_ASSIGN_OR_RETURN(DpParams dp, cfg.Dp(/*need_eta=*/false));
  absl::StatusOr<NoisyHistogram> a = PrivateHistogram(
      input.dataset, dp.epsilon, dp.delta, DeriveSeed(seed, "hist/noise", 0));
  if (!a.ok()) return ConfigError("dataset", a.status().message());
  Outcome out;
  out.result = HistogramToJson(*a);
  const double error = HistogramLinfError(*a, input.dataset);
  out.result["linf_error"] = error;
  if (cfg.Has("dp.eta")) {
    out.pass = error <= dp.eta;
    out.result["eta"] = dp.eta;
    out.result["within_eta"] = out.pass;
  }
  return out;
}

absl::StatusOr<Outcome> RunTransform(const ConfigReader& cfg, uint64_t seed) {
  SL_ASSIGN_OR_RETURN(Learner learner, cfg.LearnerAt("learner"));
  SL_ASSIGN_OR_RETURN(DpParams dp, cfg.Dp(/*need_eta=*/true));
  SL_ASSIGN_OR_RETURN(int64_t m, cfg.Int("m", 1));
  SL_ASSIGN_OR_RETURN(TransformConfig config,
                      TransformConfig::Create(dp.epsilon, dp.delta, dp.eta, m));
  config.learner_seed = DeriveSeed(seed, "transform/learner", 0);

  std::optional<Dataset> s_b;
  if (cfg.Has("dataset")) {
    SL_ASSIGN_OR_RETURN(Corpus input, ReadDomainAndDataset(cfg, "dataset"));
    s_b = std::move(input.dataset);
  } else {
    SL_ASSIGN_OR_RETURN(DiscreteDistribution data,
                        cfg.Distribution("data_distribution"));
    Rng rng(DeriveSeed(seed, "transform/sample", 0));
    s_b = SampleDataset(data, static_cast<size_t>(config.m_priv), rng);
  }
  absl::StatusOr<TransformTrace> trace = DpTransformTraced(
      learner, *s_b, config, DeriveSeed(seed, "transform/tape", 0),
      DeriveSeed(seed, "transform/noise", 0));
  if (!trace.ok()) return ConfigError("dataset", trace.status().message());

  Outcome out;
  out.result = {{"learner", learner.name},
                {"k", config.k},
                {"m", config.m},
                {"m_priv", config.m_priv},
                {"histogram", HistogramToJson(trace->histogram)},
                {"fallback", trace->released.fallback},
                {"model", DistributionToJson(trace->released.model)}};
  return out;
}

absl::StatusOr<Outcome> RunProp1(const ConfigReader& cfg, uint64_t seed) {
  SL_ASSIGN_OR_RETURN(Learner learner, cfg.LearnerAt("learner"));
  SL_ASSIGN_OR_RETURN(DiscreteDistribution data,
                      cfg.Distribution("data_distribution"));
  SL_ASSIGN_OR_RETURN(DpParams dp, cfg.Dp(/*need_eta=*/true));
  SL_ASSIGN_OR_RETURN(int64_t m, cfg.Int("m", 1));
  SL_ASSIGN_OR_RETURN(TransformConfig config,
                      TransformConfig::Create(dp.epsilon, dp.delta, dp.eta, m));
  config.learner_seed = DeriveSeed(seed, "prop1/shard-learner", 0);
  Prop1Options options;
  SL_ASSIGN_OR_RETURN(options.outer_trials, cfg.Int("outer_trials", 1, 20));
  SL_ASSIGN_OR_RETURN(options.inner_trials, cfg.Int("inner_trials", 1, 300));
  SL_ASSIGN_OR_RETURN(options.premise_trials,
                      cfg.Int("premise_trials", 1, 200));
  SL_ASSIGN_OR_RETURN(double margin, cfg.Real("margin", 0.02));
  options.seed = seed;

  absl::StatusOr<Prop1Report> report =
      Prop1Experiment(learner, data, config, options);
  if (!report.ok()) return report.status();
  Outcome out;
  out.pass = report->grand_mean <= report->bound + margin;
  out.result = {{"learner", learner.name},
                {"k", config.k},
                {"m", config.m},
                {"m_priv", config.m_priv},
                {"alpha_hat", report->alpha_hat},
                {"grand_mean", report->grand_mean},
                {"bound", report->bound},
                {"eta_slack_constant", kEtaSlackConstant},
                {"margin", margin},
                {"fallbacks", report->fallbacks},
                {"pass", out.pass}};
  out.csv = "trial,tv\n";
  for (size_t t = 0; t < report->trial_tv.size(); ++t) {
    absl::StrAppend(&out.csv, t, ",", report->trial_tv[t], "\n");
  }
  return out;
}

absl::StatusOr<Outcome> RunIngest(const ConfigReader& cfg) {
  SL_ASSIGN_OR_RETURN(Corpus corpus, ReadDomainAndDataset(cfg, "dataset"));
  const std::vector<int64_t> counts = corpus.dataset.Counts();
  Outcome out;
  out.result = {{"domain", DomainToJson(*corpus.domain)},
                {"size", corpus.dataset.size()},
                {"counts", counts}};
  return out;
}

}  // namespace

const std::vector<std::string>& Subcommands() {
  static const auto* kNames = new std::vector<std::string>{
      "tv",   "naf-check", "nfl-check", "censorship", "dp-beta",
      "hist", "transform", "prop1",     "ingest"};
  return *kNames;
}

absl::StatusOr<RunRequest> MakeRunRequest(const std::string& subcommand,
                                          const std::string& config_path,
                                          std::optional<uint64_t> seed) {
  RunRequest request;
  request.subcommand = subcommand;
  request.seed = seed;
  if (!config_path.empty()) {
    absl::StatusOr<Json> config = ReadJsonFile(config_path);
    if (!config.ok()) return config.status();
    if (!config->is_object()) {
      return ConfigError("<root>", "config must be a JSON object");
    }
    request.config = *std::move(config);
    request.base_dir =
        std::filesystem::path(config_path).parent_path().string();
    if (request.base_dir.empty()) request.base_dir = ".";
  }
  return request;
}

absl::StatusOr<RunReport> Run(const RunRequest& request) {
  const auto start = std::chrono::steady_clock::now();

  Json config = request.config;
  uint64_t seed = 0;
  if (request.seed.has_value()) {
    seed = *request.seed;
  } else if (config.contains("seed")) {
    if (!config["seed"].is_number_unsigned() &&
        !(config["seed"].is_number_integer() &&
          config["seed"].get<int64_t>() >= 0)) {
      return ConfigError("seed", "expected a non-negative integer");
    }
    seed = config["seed"].get<uint64_t>();
  }
  config["seed"] = seed;
  const ConfigReader cfg(config, request.base_dir);

  absl::StatusOr<Outcome> outcome;
  const std::string& cmd = request.subcommand;
  if (cmd == "tv") {
    outcome = RunTv(cfg);
  } else if (cmd == "naf-check") {
    outcome = RunNafCheck(cfg, seed);
  } else if (cmd == "nfl-check") {
    outcome = RunNflCheck(cfg);
  } else if (cmd == "censorship") {
    outcome = RunCensorship(cfg, seed);
  } else if (cmd == "dp-beta") {
    outcome = RunDpBeta(cfg);
  } else if (cmd == "hist") {
    outcome = RunHist(cfg, seed);
  } else if (cmd == "transform") {
    outcome = RunTransform(cfg, seed);
  } else if (cmd == "prop1") {
    outcome = RunProp1(cfg, seed);
  } else if (cmd == "ingest") {
    outcome = RunIngest(cfg);
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown subcommand '", cmd, "'"));
  }
  if (!outcome.ok()) return outcome.status();

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  RunReport report;
  report.payload = {{"schema", kReportSchema},
                    {"subcommand", cmd},
                    {"seed", seed},
                    {"config", std::move(config)},
                    {"result", std::move(outcome->result)},
                    {"pass", outcome->pass},
                    {"wall_clock_seconds", seconds}};
  report.csv = std::move(outcome->csv);
  report.exit_code = outcome->pass ? kExitPass : kExitCheckFailed;
  return report;
}

}  // namespace stability_lab
