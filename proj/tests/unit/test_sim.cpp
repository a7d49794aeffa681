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

#include <doctest.h>

#include <sstream>

#include "robcep/error.hpp"
#include "robcep/sim.hpp"

using namespace robcep;

namespace {

McScenario separated_scenario() {
  McScenario s;
  s.laws = {
      {1, {0.75, 0.8}, {-0.1, -0.05}, {1.0, 1.0}},
      {2, {-0.8, -0.75}, {-0.1, -0.05}, {1.0, 1.0}},
  };
  s.train_sizes = {8, 8};
  s.length = 256;
  s.test_size = 10;
  s.repetitions = 3;
  s.cepstra = 4;
  s.seed = 5;
  return s;
}

}  // namespace

TEST_CASE("simulated white noise has the requested variance") {
  const auto x = simulate_arma(ArmaSpec::white_noise(2.0), 20000, 1);
  CHECK(x.size() == 20000);
  CHECK(variance(x) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::abs(mean(x)) < 0.05);
}

TEST_CASE("simulated AR(1) has the right autocorrelation") {
  const auto x = simulate_arma(ArmaSpec::ar1(0.6), 20000, 2);
  const double r1 = sample_autocovariance(x, 1) / sample_autocovariance(x, 0);
  const double r2 = sample_autocovariance(x, 2) / sample_autocovariance(x, 0);
  CHECK(std::abs(r1 - 0.6) < 0.02);
  CHECK(std::abs(r2 - 0.36) < 0.02);
  // Var = sigma2 / (1 - phi^2)
  CHECK(variance(x) == doctest::Approx(1.0 / 0.64).epsilon(0.08));
}

TEST_CASE("simulation is a pure function of the seed") {
  const ArmaSpec spec{{0.5, -0.3}, {0.2}, 1.5};
  CHECK(simulate_arma(spec, 300, 9) == simulate_arma(spec, 300, 9));
  CHECK(simulate_arma(spec, 300, 9) != simulate_arma(spec, 300, 10));
  CHECK_THROWS_AS(simulate_arma(ArmaSpec::ar1(1.0), 10, 1), DomainError);
}

TEST_CASE("population draws stay in the stationarity triangle") {
  CHECK(in_stationarity_triangle(0.5, -0.3));
  CHECK_FALSE(in_stationarity_triangle(1.5, 0.0));
  CHECK_FALSE(in_stationarity_triangle(0.0, -1.0));
  for (const auto& law : reference_laws(1)) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto p = draw_population_params(law, seed);
      REQUIRE(p.ar.size() == 2);
      CHECK(in_stationarity_triangle(p.ar[0], p.ar[1]));
      CHECK(p.ar[0] >= law.phi1.lo);
      CHECK(p.ar[0] <= law.phi1.hi);
      CHECK(p.ar[1] >= law.phi2.lo);
      CHECK(p.ar[1] <= law.phi2.hi);
      CHECK(p.sigma2 >= law.sigma2.lo);
      CHECK(p.sigma2 <= law.sigma2.hi);
    }
  }
}

TEST_CASE("degenerate and infeasible laws") {
  const PopulationLaw point{1, {0.4, 0.4}, {-0.2, -0.2}, {2.0, 2.0}};
  const auto p = draw_population_params(point, 3);
  CHECK(p.ar == std::vector<double>{0.4, -0.2});
  CHECK(p.sigma2 == 2.0);
  const PopulationLaw outside{1, {1.5, 1.6}, {0.1, 0.2}, {1.0, 1.0}};
  CHECK_THROWS_AS(draw_population_params(outside, 1), ConfigurationError);
  CHECK_THROWS_AS(reference_laws(4), ConfigurationError);
  CHECK(reference_laws(3)[0].sigma2 == Interval{0.9, 1.1});
}

TEST_CASE("scenario validation") {
  auto s = separated_scenario();
  CHECK_NOTHROW(s.validate());
  s.train_sizes = {8};
  CHECK_THROWS_AS(s.validate(), ConfigurationError);
  s = separated_scenario();
  s.laws[1].label = 3;
  CHECK_THROWS_AS(s.validate(), ConfigurationError);
  s = separated_scenario();
  s.train_sizes = {1, 8};
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("well separated populations are classified almost perfectly") {
  const auto res = run_mc(separated_scenario(), 1);
  CHECK(res.failed == 0);
  CHECK(res.repetitions.size() == 3);
  CHECK(res.mean_rate >= 0.95);
  CHECK(res.mean_diagonal.size() == 2);
}

TEST_CASE("Monte Carlo results do not depend on the job count") {
  auto s = separated_scenario();
  s.contamination = ContaminationConfig{};
  const auto a = run_mc(s, 1);
  const auto b = run_mc(s, 3);
  CHECK(to_json(a).dump() == to_json(b).dump());
  std::ostringstream ca;
  std::ostringstream cb;
  write_mc_csv(ca, a);
  write_mc_csv(cb, b);
  CHECK(ca.str() == cb.str());
  CHECK(ca.str().rfind("rep,rate,pop1_diag,pop2_diag\n", 0) == 0);

  const auto r1 = simulate_repetition(s, 1);
  const auto r1b = simulate_repetition(s, 1);
  CHECK(r1.train.size() == 16);
  CHECK(r1.test.size() == 20);
  CHECK(r1.train[0].values == r1b.train[0].values);
  CHECK(r1.train[0].values != simulate_repetition(s, 2).train[0].values);
}

TEST_CASE("scenario JSON round trip") {
  auto s = separated_scenario();
  s.contamination = ContaminationConfig{0.02, 5.0, 0};
  s.estimator = {EstimatorKind::kMultitaperM, 5, 2.0};
  s.huber.c = 2.0;
  const auto back = mc_scenario_from_json(nlohmann::json::parse(to_json(s).dump()));
  CHECK(to_json(back) == to_json(s));
  CHECK(back.laws == s.laws);
  REQUIRE(back.contamination.has_value());
  CHECK(back.contamination->probability == 0.02);

  const auto ref = mc_scenario_from_json({{"variance_scenario", 2}, {"train_size", 15}});
  CHECK(ref.train_sizes == std::vector<std::size_t>{15, 15, 15});
  CHECK(ref.laws == reference_laws(2));
  CHECK_THROWS_AS(mc_scenario_from_json({{"train_size", 15}}), ConfigurationError);
}
