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

// stability-lab <subcommand> --config <file> [--seed N] [--out report.json]
//               [--csv table.csv]
//
// Exit status: 0 when every check passes, 2 when a check fails, 1 on error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "stability_lab/io.h"
#include "stability_lab/runner.h"

int main(int argc, char** argv) {
  namespace sl = stability_lab;

  CLI::App app{
      "Stability lab: DP and NAF stability computations over finite "
      "content domains"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_path;
  std::string csv_path;
  for (const std::string& name : sl::Subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "Root seed; overrides the config's seed");
    sub->add_option("--out", out_path, "Write the JSON report here");
    sub->add_option("--csv", csv_path, "Write the table (if any) here");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sl::kExitError;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();

  absl::StatusOr<sl::RunRequest> request =
      sl::MakeRunRequest(subcommand, config_path, seed);
  if (!request.ok()) {
    std::cerr << "error: " << request.status().message() << "\n";
    return sl::kExitError;
  }
  absl::StatusOr<sl::RunReport> report = sl::Run(*request);
  if (!report.ok()) {
    std::cerr << "error: " << report.status().message() << "\n";
    return sl::kExitError;
  }

  const std::string json = report->payload.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << json;
  } else if (absl::Status s = sl::WriteTextFile(out_path, json); !s.ok()) {
    std::cerr << "error: " << s.message() << "\n";
    return sl::kExitError;
  }
  if (!csv_path.empty()) {
    if (absl::Status s = sl::WriteTextFile(csv_path, report->csv); !s.ok()) {
      std::cerr << "error: " << s.message() << "\n";
      return sl::kExitError;
    }
  }
  if (report->exit_code != sl::kExitPass) {
    std::cerr << subcommand << ": check failed\n";
  }
  return report->exit_code;
}
