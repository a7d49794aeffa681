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

#include <nlohmann/json.hpp>

#include "robcep/clda.hpp"

namespace robcep {

inline constexpr const char* kModelFormat = "robcep.discriminant_model";
inline constexpr int kModelFormatVersion = 1;

/// Versioned document; doubles survive a dump/parse cycle bit for bit.
nlohmann::json to_json(const DiscriminantModel& model);
/// Throws DomainError on a wrong format tag or unsupported version.
DiscriminantModel discriminant_model_from_json(const nlohmann::json& j);

void save_model(const DiscriminantModel& model, const std::string& path);
DiscriminantModel load_model(const std::string& path);

nlohmann::json to_json(const ConfusionMatrix& cm);
ConfusionMatrix confusion_matrix_from_json(const nlohmann::json& j);

/// Header "predicted,pop1,...,popJ"; J proportion rows followed by a
/// "count" row.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);
ConfusionMatrix read_confusion_csv(std::istream& in, const std::string& source);

/// population,replicate,ell,value
void write_cepstra_csv(std::ostream& out, const std::vector<LabeledCepstra>& sample);

}  // namespace robcep
