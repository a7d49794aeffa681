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

#include <algorithm>
#include <cmath>
#include <set>

#include "robcep/core.hpp"
#include "robcep/error.hpp"
#include "robcep/rng.hpp"
#include "test_util.hpp"

using namespace robcep;
using robcep::testing::gaussian;

TEST_CASE("mean, median and variance on small inputs") {
  const std::vector<double> x{3.0, 1.0, 4.0, 1.0, 5.0};
  CHECK(mean(x) == doctest::Approx(2.8));
  CHECK(median(x) == 3.0);
  CHECK(median(std::vector<double>{4.0, 1.0, 3.0, 2.0}) == 2.5);
  // (1/N) sum (x - xbar)^2
  CHECK(variance(x) == doctest::Approx((0.04 + 3.24 + 1.44 + 3.24 + 4.84) / 5.0));
  CHECK_THROWS_AS(median(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(mean(std::vector<double>{}), DomainError);
}

TEST_CASE("sample_autocovariance matches the direct double sum") {
  const auto x = gaussian(37, 11);
  const double xbar = mean(x);
  for (long h = -5; h <= 5; ++h) {
    const auto a = static_cast<std::size_t>(std::labs(h));
    double acc = 0.0;
    for (std::size_t t = 0; t + a < x.size(); ++t) acc += (x[t] - xbar) * (x[t + a] - xbar);
    CHECK(sample_autocovariance(x, h) == doctest::Approx(acc / 37.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sample_autocovariance(x, 37), DomainError);
  CHECK_THROWS_AS(sample_autocovariance(x, -37), DomainError);
}

TEST_CASE("detrend removes an exact line and leaves residuals orthogonal to (1, t)") {
  std::vector<double> line(50);
  for (std::size_t t = 0; t < line.size(); ++t) line[t] = 2.5 - 0.3 * static_cast<double>(t);
  for (double r : detrend(line)) CHECK(std::abs(r) < 1e-12);

  auto x = gaussian(64, 5);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] += 0.1 * static_cast<double>(t);
  const auto r = detrend(x);
  double s0 = 0.0;
  double s1 = 0.0;
  for (std::size_t t = 0; t < r.size(); ++t) {
    s0 += r[t];
    s1 += r[t] * static_cast<double>(t);
  }
  CHECK(std::abs(s0) < 1e-10);
  CHECK(std::abs(s1) < 1e-8);
}

TEST_CASE("median_sd_filter replaces points beyond k sd of the median") {
  std::vector<double> x(9, 0.0);
  x.push_back(100.0);
  // sd (n-1) = 31.6, so 100 lies outside median +- 3 sd.
  const auto y = median_sd_filter(x, 3.0);
  CHECK(y.back() == 0.0);
  CHECK(count_median_sd_outliers(x, 3.0) == 1);

  // With five points the sd is 44.7; 100 stays within 3 sd of the median.
  const std::vector<double> small{0.0, 0.0, 0.0, 0.0, 100.0};
  CHECK(median_sd_filter(small, 3.0) == small);
  CHECK(count_median_sd_outliers(small, 3.0) == 0);

  const std::vector<double> flat(12, 4.0);
  CHECK(median_sd_filter(flat, 3.0) == flat);
  CHECK_THROWS_AS(median_sd_filter(flat, 0.0), DomainError);
}

TEST_CASE("contaminate shifts a fraction p of points by exactly +-omega") {
  const auto x = gaussian(20000, 3);
  ContaminationConfig cfg;
  cfg.probability = 0.05;
  cfg.magnitude = 7.0;
  cfg.seed = 99;
  const auto z = contaminate(x, cfg);
  std::size_t up = 0;
  std::size_t down = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double d = z[t] - x[t];
    if (d == 0.0) continue;
    if (std::abs(d - 7.0) < 1e-12) {
      ++up;
    } else if (std::abs(d + 7.0) < 1e-12) {
      ++down;
    } else {
      FAIL("shift other than +-omega");
    }
  }
  // Binomial(20000, 0.025): mean 500, sd 22.
  CHECK(up > 400);
  CHECK(up < 600);
  CHECK(down > 400);
  CHECK(down < 600);
  CHECK(contaminate(x, cfg) == z);

  cfg.magnitude = 0.0;
  CHECK(contaminate(x, cfg) == x);
  cfg.probability = 0.0;
  CHECK_THROWS_AS(contaminate(x, cfg), DomainError);
}

TEST_CASE("truncate keeps the leading points") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(truncate(x, 3) == std::vector<double>{1, 2, 3});
  CHECK(truncate(x, 5) == x);
  CHECK_THROWS_AS(truncate(x, 6), DomainError);
}

TEST_CASE("ReplicateSet validates labels and lengths") {
  const auto a = gaussian(16, 1);
  const auto b = gaussian(16, 2);
  ReplicateSet ok({Replicate(a, 1, 1), Replicate(b, 1, 2), Replicate(a, 2, 1)});
  CHECK(ok.size() == 3);
  CHECK(ok.length() == 16);
  CHECK(ok.num_populations() == 2);
  CHECK(ok.counts() == std::vector<std::size_t>{2, 1});
  CHECK(ok.priors()[0] == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(Replicate(std::vector<double>(4, 0.0), 1, 1), DomainError);
  CHECK_THROWS_AS(Replicate(a, 0, 1), DomainError);
  std::vector<double> bad = a;
  bad[3] = std::nan("");
  CHECK_THROWS_AS(Replicate(bad, 1, 1), DomainError);
  // Population 2 missing.
  CHECK_THROWS_AS(ReplicateSet({Replicate(a, 1, 1), Replicate(b, 3, 1)}), DomainError);
  CHECK_THROWS_AS(ReplicateSet({Replicate(a, 1, 1), Replicate(gaussian(17, 3), 2, 1)}),
                  DomainError);
  CHECK_THROWS_AS(ReplicateSet({}), InsufficientDataError);
}

TEST_CASE("derive_seed separates streams and is a pure function") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t j = 0; j < 4; ++j) {
    for (std::uint64_t k = 0; k < 50; ++k) {
      for (auto p : {StreamPurpose::kParameters, StreamPurpose::kInnovations,
                     StreamPurpose::kContamination, StreamPurpose::kTestInnovations}) {
        seen.insert(derive_seed(42, j, k, p));
      }
    }
  }
  CHECK(seen.size() == 4 * 50 * 4);
  CHECK(derive_seed(42, 1, 2, StreamPurpose::kInnovations) ==
        derive_seed(42, 1, 2, StreamPurpose::kInnovations));
  CHECK(derive_seed(42, 1, 2, StreamPurpose::kInnovations) !=
        derive_seed(43, 1, 2, StreamPurpose::kInnovations));
  auto e1 = make_engine(7);
  auto e2 = make_engine(7);
  CHECK(e1() == e2());
}
