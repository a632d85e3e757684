/*
 * Copyright 2026 The lmwave Authors
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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lmw::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kUsage = 64 };

/// Fully resolved run parameters. `provenance` records where every field
/// came from: "config", "flag", "env" or "default".
struct RunConfig {
  std::string command;
  double d = 0.35;
  std::string fstar = "farima";
  double phi = 0.0;
  bool normalize = true;
  std::string G = "identity";
  int K = 0;
  std::string bank = "haar";
  int J = 8;
  std::size_t n = std::size_t{1} << 17;
  int replicates = 100;
  int j1 = 3;
  int j2 = 7;
  std::uint64_t seed = 1;
  int q = 2;
  std::vector<long> lags{1, 2, 3, 4};
  int m_max = 1;
  int threads = 0;
  std::optional<double> tolerance_band;
  std::string output_dir = ".";
  std::string input;

  std::map<std::string, std::string> provenance;

  nlohmann::json to_json() const;
};

struct ConfigResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;
};

/// Applies defaults, then the JSON object, then `overrides` (flag values),
/// and checks every module precondition. Unknown keys are errors.
ConfigResult resolve_config(const std::string& command, const nlohmann::json& file_values,
                            const nlohmann::json& overrides);

/// Reads and validates a JSON config file.
ConfigResult validate_config(const std::string& path, const std::string& command = "scaling");

/// Entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace lmw::cli
