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

// Experiment orchestration behind the stability-lab CLI.
//
// A run is one subcommand applied to one JSON config document. Relative file
// paths inside the config resolve against the config file's directory. The
// --seed flag, when given, overrides the config's "seed" field (default 0).

#ifndef STABILITY_LAB_RUNNER_H_
#define STABILITY_LAB_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "stability_lab/io.h"

namespace stability_lab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

inline constexpr char kReportSchema[] = "1";

const std::vector<std::string>& Subcommands();

struct RunRequest {
  std::string subcommand;
  Json config = Json::object();
  std::string base_dir = ".";
  std::optional<uint64_t> seed;
};

struct RunReport {
  Json payload;     // {"schema", "subcommand", "seed", "config", "result",
                    //  "pass", "wall_clock_seconds"}
  std::string csv;  // empty when the subcommand has no table
  int exit_code = kExitPass;
};

// Reads the config file (if any) into a request.
absl::StatusOr<RunRequest> MakeRunRequest(const std::string& subcommand,
                                          const std::string& config_path,
                                          std::optional<uint64_t> seed);

// Errors are InvalidArgument with a message of the form
// "config error at <field path>: <reason>".
absl::StatusOr<RunReport> Run(const RunRequest& request);

}  // namespace stability_lab

#endif  // STABILITY_LAB_RUNNER_H_
