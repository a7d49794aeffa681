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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "robcep/cepstral.hpp"
#include "robcep/core.hpp"
#include "robcep/pipeline.hpp"

namespace robcep {

/// Samples discarded before the returned realization starts.
inline constexpr std::size_t kBurnIn = 500;

/// Gaussian ARMA realization of length n after the burn-in.
Series simulate_arma(const ArmaSpec& spec, std::size_t n, std::uint64_t seed);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
};

/// Conditional AR(2) law of one population: phi1, phi2 and sigma^2 each
/// uniform on their interval.
struct PopulationLaw {
  int label = 1;
  Interval phi1;
  Interval phi2;
  Interval sigma2;

  void validate() const;
  bool operator==(const PopulationLaw&) const = default;
};

/// phi2 > -1, phi2 < 1 - phi1, phi2 < 1 + phi1.
bool in_stationarity_triangle(double phi1, double phi2) noexcept;

/// Uniform draws, rejection-resampled (at most 1000 tries) until the AR(2)
/// pair is stationary. Throws ConfigurationError when no draw succeeds.
ArmaSpec draw_population_params(const PopulationLaw& law, std::uint64_t seed);

/// The three-population laws with the innovation variance range of
/// variance scenario `scenario` (1, 2 or 3):
///   1: sigma^2 ~ U(0.1, 10), 2: U(0.3, 3), 3: U(0.9, 1.1).
std::vector<PopulationLaw> reference_laws(int scenario);

struct McScenario {
  std::vector<PopulationLaw> laws;
  std::vector<std::size_t> train_sizes;  // n_j, one per law
  std::size_t length = 1000;             // N, shared by train and test series
  std::size_t test_size = 50;            // test series per population
  EstimatorSpec estimator;
  HuberConfig huber;
  std::optional<ContaminationConfig> contamination;  // seed field ignored
  std::size_t repetitions = 100;
  std::size_t cepstra = 9;  // L
  std::uint64_t seed = 0;

  void validate() const;
};

struct McRepetition {
  std::size_t index = 0;
  bool failed = false;
  std::string error;
  double rate = 0.0;
  std::vector<double> diagonal;  // rho_jj
};

struct McResult {
  std::vector<McRepetition> repetitions;
  double mean_rate = 0.0;
  double sd_rate = 0.0;  // sample standard deviation (n-1)
  std::vector<double> mean_diagonal;
  std::size_t failed = 0;
};

/// Simulates the train/test sets of one repetition. Exposed so two
/// estimators can be compared on identical data.
struct McSample {
  std::vector<NamedSeries> train;
  std::vector<NamedSeries> test;
};
McSample simulate_repetition(const McScenario& scn, std::size_t rep);

/// Full protocol; repetitions run on up to `jobs` threads with identical
/// results for any job count. More than 10% failed repetitions raises
/// NumericalError.
McResult run_mc(const McScenario& scn, unsigned jobs = 1);

nlohmann::json to_json(const McScenario& scn);
McScenario mc_scenario_from_json(const nlohmann::json& j);

nlohmann::json to_json(const McResult& res);

/// rep,rate,pop1_diag,...  (failed repetitions have empty cells)
void write_mc_csv(std::ostream& out, const McResult& res);

}  // namespace robcep
