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

#include "robcep/spectral_io.hpp"

#include <ostream>

#include "robcep/error.hpp"
#include "robcep/series_io.hpp"

namespace robcep {

nlohmann::json to_json(const EstimatorSpec& spec) {
  nlohmann::json j{{"kind", to_string(spec.kind)}};
  if (spec.uses_tapers()) j["tapers"] = spec.tapers;
  if (spec.uses_huber()) j["huber_c"] = spec.huber_c;
  return j;
}

EstimatorSpec estimator_spec_from_json(const nlohmann::json& j) {
  EstimatorSpec spec;
  spec.kind = parse_estimator_kind(j.at("kind").get<std::string>());
  spec.tapers = j.value("tapers", spec.tapers);
  spec.huber_c = j.value("huber_c", spec.huber_c);
  return spec;
}

nlohmann::json to_json(const SpectralEstimate& est) {
  nlohmann::json grid{{"n", est.grid.series_length()}};
  auto& ms = grid["m"] = nlohmann::json::array();
  auto& ls = grid["lambda"] = nlohmann::json::array();
  for (std::size_t m = 1; m <= est.grid.size(); ++m) {
    ms.push_back(m);
    ls.push_back(est.grid.frequency(m));
  }
  return {{"grid", std::move(grid)},
          {"values", est.values},
          {"estimator", to_json(est.estimator)}};
}

SpectralEstimate spectral_estimate_from_json(const nlohmann::json& j) {
  const FrequencyGrid grid(j.at("grid").at("n").get<std::size_t>());
  auto values = j.at("values").get<std::vector<double>>();
  if (values.size() != grid.size()) {
    throw DomainError("spectral estimate has " + std::to_string(values.size()) +
                      " values for a grid of " + std::to_string(grid.size()));
  }
  return SpectralEstimate{grid, std::move(values),
                          estimator_spec_from_json(j.at("estimator"))};
}

void write_spectrum_csv(std::ostream& out, const SpectralEstimate& est) {
  out << "m,lambda,value\n";
  for (std::size_t m = 1; m <= est.grid.size(); ++m) {
    out << m << ',' << format_double(est.grid.frequency(m)) << ','
        << format_double(est.values[m - 1]) << '\n';
  }
}

}  // namespace robcep
