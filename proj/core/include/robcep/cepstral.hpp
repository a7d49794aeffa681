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

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "robcep/spectral.hpp"

namespace robcep {

/// First L cepstral coefficients c_0..c_{L-1}.
struct CepstralVector {
  std::vector<double> coefficients;
  /// Where the coefficients came from, e.g. "multitaper(R=7)" or
  /// "theoretical ARMA(1,0)".
  std::string source;

  std::size_t size() const noexcept { return coefficients.size(); }
  double operator[](std::size_t ell) const { return coefficients[ell]; }
};

/// X_t = sum_i phi_i X_{t-i} + e_t + sum_j theta_j e_{t-j}, Var(e) = sigma2.
/// AR polynomial 1 - phi_1 z - ... ; MA polynomial 1 + theta_1 z + ...
struct ArmaSpec {
  std::vector<double> ar;
  std::vector<double> ma;
  double sigma2 = 1.0;

  static ArmaSpec white_noise(double sigma2 = 1.0) { return {{}, {}, sigma2}; }
  static ArmaSpec ar1(double phi, double sigma2 = 1.0) { return {{phi}, {}, sigma2}; }
  static ArmaSpec ma1(double theta, double sigma2 = 1.0) { return {{}, {theta}, sigma2}; }
  static ArmaSpec arma11(double phi, double theta, double sigma2 = 1.0) {
    return {{phi}, {theta}, sigma2};
  }

  std::string describe() const;
};

/// Reciprocal roots of the AR and MA polynomials: 1 - phi(z) = prod (1 - a_r z),
/// 1 + theta(z) = prod (1 - b_i z). Stationarity/invertibility means every
/// |a_r|, |b_i| < 1.
struct ArmaFactors {
  std::vector<std::complex<double>> ar;
  std::vector<std::complex<double>> ma;
};

/// Companion-matrix eigenvalues. Throws DomainError if sigma2 <= 0 or any
/// reciprocal root has modulus >= 1 - 1e-8.
ArmaFactors factor_arma(const ArmaSpec& spec);

/// Validates without returning the factors.
void validate_arma(const ArmaSpec& spec);

/// c_0 = mean ln S over the grid; c_l = (2/M) sum_m (ln S_m - c_0) cos(lambda_m l).
CepstralVector estimate_cepstra(const SpectralEstimate& est, std::size_t count);

/// Same as above for raw log-spectral values on `grid`.
CepstralVector cepstra_from_log_spectrum(const FrequencyGrid& grid,
                                         const std::vector<double>& log_spectrum,
                                         std::size_t count, std::string source = {});

/// ln S(lambda) from the factored polynomial form.
double theoretical_log_spectrum(const ArmaSpec& spec, double lambda);

/// Closed-form ARMA cepstra: c_0 = ln(sigma2 / 2pi),
/// c_l = (2/l) (sum_r Re a_r^l - sum_i Re b_i^l).
CepstralVector theoretical_cepstra(const ArmaSpec& spec, std::size_t count);

/// Fitted envelope |c_l| <= theta * delta^l / l over l = 1..L-1.
struct DecayEnvelope {
  double theta = 0.0;
  double delta = 0.0;
  bool holds = true;
};

DecayEnvelope fit_decay_envelope(const CepstralVector& cv);

/// True iff the fitted envelope has delta < 1.
bool cepstra_decay_check(const CepstralVector& cv);

nlohmann::json to_json(const CepstralVector& cv);
CepstralVector cepstral_vector_from_json(const nlohmann::json& j);

}  // namespace robcep
