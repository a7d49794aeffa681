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

#include <nlohmann/json.hpp>

#include "robcep/spectral.hpp"

namespace robcep {

nlohmann::json to_json(const EstimatorSpec& spec);
EstimatorSpec estimator_spec_from_json(const nlohmann::json& j);

/// {"grid": {"n", "m", "lambda"}, "values": [...], "estimator": {...}}
nlohmann::json to_json(const SpectralEstimate& est);
SpectralEstimate spectral_estimate_from_json(const nlohmann::json& j);

/// Rows "m,lambda,value" with a header.
void write_spectrum_csv(std::ostream& out, const SpectralEstimate& est);

}  // namespace robcep
