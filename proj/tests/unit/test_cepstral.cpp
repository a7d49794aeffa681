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

#include <cmath>
#include <numbers>

#include "robcep/cepstral.hpp"
#include "robcep/error.hpp"
#include "robcep/sim.hpp"
#include "test_util.hpp"

using namespace robcep;

namespace {

constexpr double kPi = std::numbers::pi;

/// c_0 = (1/pi) int_0^pi ln S, c_l = (2/pi) int_0^pi ln S cos(l lambda), by
/// the midpoint rule with `panels` panels.
double integrated_cepstrum(const ArmaSpec& spec, std::size_t ell, int panels = 4096) {
  const double h = kPi / panels;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lambda = (i + 0.5) * h;
    acc += theoretical_log_spectrum(spec, lambda) * std::cos(static_cast<double>(ell) * lambda);
  }
  return (ell == 0 ? 1.0 : 2.0) * acc * h / kPi;
}

}  // namespace

TEST_CASE("closed-form cepstra of AR(1), MA(1) and ARMA(1,1)") {
  const double phi = 0.6;
  const double theta = -0.4;
  const double s2 = 2.5;
  const auto ar = theoretical_cepstra(ArmaSpec::ar1(phi, s2), 12);
  const auto ma = theoretical_cepstra(ArmaSpec::ma1(theta, s2), 12);
  const auto arma = theoretical_cepstra(ArmaSpec::arma11(phi, theta, s2), 12);
  const double c0 = std::log(s2 / (2.0 * kPi));
  CHECK(std::abs(ar[0] - c0) < 1e-12);
  CHECK(std::abs(ma[0] - c0) < 1e-12);
  for (std::size_t l = 1; l < 12; ++l) {
    const double dl = static_cast<double>(l);
    const double a = 2.0 * std::pow(phi, dl) / dl;
    const double m = -2.0 * std::pow(-theta, dl) / dl;
    CHECK(std::abs(ar[l] - a) < 1e-12);
    CHECK(std::abs(ma[l] - m) < 1e-12);
    CHECK(std::abs(arma[l] - (a + m)) < 1e-12);
  }
  const auto white = theoretical_cepstra(ArmaSpec::white_noise(1.0), 5);
  CHECK(white[0] == doctest::Approx(-std::log(2.0 * kPi)));
  for (std::size_t l = 1; l < 5; ++l) CHECK(white[l] == 0.0);
}

TEST_CASE("closed forms agree with numerical integration of the log spectrum") {
  const ArmaSpec specs[] = {
      ArmaSpec::ar1(0.5),
      {{0.5, -0.3}, {}, 1.0},
      {{0.9, -0.5}, {0.4}, 0.7},
      {{}, {0.3, 0.2}, 3.0},
  };
  for (const auto& spec : specs) {
    const auto cv = theoretical_cepstra(spec, 10);
    for (std::size_t l = 0; l < 10; ++l) {
      CAPTURE(l);
      CHECK(std::abs(cv[l] - integrated_cepstrum(spec, l)) < 1e-6);
    }
  }
}

TEST_CASE("nonstationary and noninvertible models are rejected") {
  CHECK_THROWS_AS(theoretical_cepstra(ArmaSpec::ar1(1.01), 3), DomainError);
  CHECK_THROWS_AS(theoretical_cepstra(ArmaSpec::ar1(-1.0), 3), DomainError);
  CHECK_THROWS_AS(theoretical_cepstra(ArmaSpec::ma1(1.5), 3), DomainError);
  CHECK_THROWS_AS(validate_arma({{1.2, -0.1}, {}, 1.0}), DomainError);
  CHECK_THROWS_AS(validate_arma(ArmaSpec::white_noise(0.0)), DomainError);
  CHECK_NOTHROW(validate_arma({{0.5, 0.3}, {}, 1.0}));
}

TEST_CASE("flat log spectrum gives zero higher cepstra") {
  const FrequencyGrid grid(64);
  const std::vector<double> flat(grid.size(), -1.7);
  const auto cv = cepstra_from_log_spectrum(grid, flat, 9);
  CHECK(cv[0] == doctest::Approx(-1.7));
  for (std::size_t l = 1; l < 9; ++l) CHECK(std::abs(cv[l]) < 1e-14);
  CHECK_THROWS_AS(cepstra_from_log_spectrum(grid, flat, 0), DomainError);
  CHECK_THROWS_AS(cepstra_from_log_spectrum(FrequencyGrid(65), flat, 3), DomainError);
}

TEST_CASE("rescaling a spectrum only moves c_0") {
  const auto x = robcep::testing::gaussian(128, 6);
  auto est = multitaper_periodogram(x, 5);
  const auto a = estimate_cepstra(est, 9);
  for (double& v : est.values) v *= 5.0;
  const auto b = estimate_cepstra(est, 9);
  CHECK(b[0] - a[0] == doctest::Approx(std::log(5.0)));
  for (std::size_t l = 1; l < 9; ++l) CHECK(std::abs(a[l] - b[l]) < 1e-12);
  CHECK(a.source == "multitaper(R=5)");
}

TEST_CASE("a single cosine log spectrum maps to one coefficient") {
  // Leaving lambda = 0 out of the grid leaks 0.3/M into the other coefficients.
  for (std::size_t n : {101u, 1001u}) {
    const FrequencyGrid grid(n);
    const double bound = 0.3 * 1.05 / static_cast<double>(grid.size());
    std::vector<double> ls(grid.size());
    for (std::size_t m = 1; m <= grid.size(); ++m) ls[m - 1] = 0.3 * std::cos(3.0 * grid.frequency(m));
    const auto cv = cepstra_from_log_spectrum(grid, ls, 8);
    for (std::size_t l = 0; l < 8; ++l) CHECK(std::abs(cv[l] - (l == 3 ? 0.3 : 0.0)) < bound);
  }
}

TEST_CASE("estimated cepstra of a long AR(1) series approach the closed form") {
  const auto x = simulate_arma(ArmaSpec::ar1(0.5), 8192, 44);
  const auto cv = estimate_cepstra(multitaper_periodogram(x, 7), 5);
  const auto th = theoretical_cepstra(ArmaSpec::ar1(0.5), 5);
  for (std::size_t l = 1; l < 5; ++l) CHECK(std::abs(cv[l] - th[l]) < 0.05);
}

TEST_CASE("decay envelope of ARMA cepstra") {
  const auto env = fit_decay_envelope(theoretical_cepstra(ArmaSpec::ar1(0.5), 12));
  CHECK(env.holds);
  CHECK(env.delta == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(env.theta == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(cepstra_decay_check(theoretical_cepstra({{0.9, -0.5}, {0.4}, 0.7}, 15)));

  CepstralVector growing{{0.0, 0.1, 0.4, 1.6, 6.4}, "synthetic"};
  CHECK_FALSE(cepstra_decay_check(growing));
  CHECK(cepstra_decay_check(theoretical_cepstra(ArmaSpec::white_noise(), 6)));
}

TEST_CASE("cepstral vector JSON round trip is exact") {
  const auto cv = theoretical_cepstra({{0.5, -0.3}, {0.2}, 1.3}, 9);
  const auto back = cepstral_vector_from_json(nlohmann::json::parse(to_json(cv).dump()));
  CHECK(back.coefficients == cv.coefficients);
  CHECK(back.source == cv.source);
  CHECK_THROWS_AS(cepstral_vector_from_json(nlohmann::json{{"coefficients", nlohmann::json::array()}}),
                  DomainError);
}
