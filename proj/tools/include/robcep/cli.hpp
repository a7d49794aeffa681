// Copyright 2026 The robcep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "robcep/pipeline.hpp"

namespace robcep::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericalFailure = 3,
};

/// Runs the robcep command line. `args` excludes the program name. Primary
/// output goes to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Pipeline settings from a JSON document (TOML files are converted first):
///   estimator, tapers, huber_c, L, seed,
///   huber.{max_iterations,tolerance},
///   preprocessing.{truncate_to,median_sd_k,detrend}, preset.
/// Keys that are absent keep the values already in `cfg`.
void apply_config(const nlohmann::json& j, PipelineConfig& cfg);

/// Reads a TOML (.toml) or JSON file into JSON.
nlohmann::json read_config_file(const std::string& path);

/// "white", "ar1:phi", "ma1:theta", "arma11:phi,theta", "ar:phi1,phi2,...",
/// "ma:theta1,...", "arma:phi1,...;theta1,...". sigma2 is set separately.
ArmaSpec parse_arma_spec(const std::string& text);

}  // namespace robcep::cli
