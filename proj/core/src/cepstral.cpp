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

#include "robcep/cepstral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "robcep/error.hpp"

namespace robcep {

namespace {

constexpr double kUnitCircleMargin = 1e-8;

/// Reciprocal roots of 1 + sum_k coef[k] z^(k+1), i.e. roots of
/// w^p + coef[0] w^(p-1) + ... + coef[p-1].
std::vector<std::complex<double>> reciprocal_roots(const std::vector<double>& coef) {
  std::size_t p = coef.size();
  while (p > 0 && coef[p - 1] == 0.0) --p;  // trailing zeros are roots at w = 0
  std::vector<std::complex<double>> roots(coef.size() - p, {0.0, 0.0});
  if (p == 0) return roots;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                    static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) companion(0, static_cast<Eigen::Index>(k)) = -coef[k];
  for (std::size_t k = 1; k < p; ++k) {
    companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("companion eigen-decomposition failed");
  }
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

/// ln |1 - a e^{-i lambda}|^2
double log_factor(std::complex<double> a, double lambda) {
  const std::complex<double> z = std::polar(1.0, -lambda);
  return std::log(std::norm(1.0 - a * z));
}

}  // namespace

std::string ArmaSpec::describe() const {
  std::ostringstream s;
  s << "ARMA(" << ar.size() << "," << ma.size() << ")";
  return s.str();
}

ArmaFactors factor_arma(const ArmaSpec& spec) {
  if (!(spec.sigma2 > 0.0) || !std::isfinite(spec.sigma2)) {
    throw DomainError("innovation variance must be positive and finite");
  }
  std::vector<double> ar_coef(spec.ar.size());
  for (std::size_t k = 0; k < spec.ar.size(); ++k) ar_coef[k] = -spec.ar[k];
  ArmaFactors f{reciprocal_roots(ar_coef), reciprocal_roots(spec.ma)};
  for (const auto& a : f.ar) {
    if (std::abs(a) >= 1.0 - kUnitCircleMargin) {
      std::ostringstream msg;
      msg << "AR polynomial is not stationary: reciprocal root modulus " << std::abs(a)
          << " >= 1";
      throw DomainError(msg.str());
    }
  }
  for (const auto& b : f.ma) {
    if (std::abs(b) >= 1.0 - kUnitCircleMargin) {
      std::ostringstream msg;
      msg << "MA polynomial is not invertible: reciprocal root modulus " << std::abs(b)
          << " >= 1";
      throw DomainError(msg.str());
    }
  }
  return f;
}

void validate_arma(const ArmaSpec& spec) { (void)factor_arma(spec); }

CepstralVector cepstra_from_log_spectrum(const FrequencyGrid& grid,
                                         const std::vector<double>& log_spectrum,
                                         std::size_t count, std::string source) {
  if (count < 1) throw DomainError("number of cepstral coefficients must be >= 1");
  const std::size_t m_count = grid.size();
  if (log_spectrum.size() != m_count) {
    throw DomainError("log-spectrum length does not match the frequency grid");
  }
  double c0 = 0.0;
  for (double v : log_spectrum) {
    if (!std::isfinite(v)) throw DomainError("log-spectrum contains a non-finite value");
    c0 += v;
  }
  c0 /= static_cast<double>(m_count);

  CepstralVector cv;
  cv.source = std::move(source);
  cv.coefficients.assign(count, 0.0);
  cv.coefficients[0] = c0;
  const double w = 2.0 / static_cast<double>(m_count);
  const std::size_t n = grid.series_length();
  for (std::size_t ell = 1; ell < count; ++ell) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= m_count; ++m) {
      // Exact reduction of m * ell mod N keeps the argument small.
      const std::size_t k = (m * ell) % n;
      acc += (log_spectrum[m - 1] - c0) *
             std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    cv.coefficients[ell] = w * acc;
  }
  return cv;
}

CepstralVector estimate_cepstra(const SpectralEstimate& est, std::size_t count) {
  std::vector<double> logs(est.values.size());
  for (std::size_t m = 0; m < logs.size(); ++m) {
    const double v = est.values[m];
    if (!(v > 0.0)) throw DomainError("spectral value is not positive; cannot take log");
    logs[m] = std::log(std::max(v, kSpectralFloor));
  }
  return cepstra_from_log_spectrum(est.grid, logs, count, est.estimator.describe());
}

double theoretical_log_spectrum(const ArmaSpec& spec, double lambda) {
  const auto f = factor_arma(spec);
  double v = std::log(spec.sigma2 / (2.0 * std::numbers::pi));
  for (const auto& b : f.ma) v += log_factor(b, lambda);
  for (const auto& a : f.ar) v -= log_factor(a, lambda);
  return v;
}

CepstralVector theoretical_cepstra(const ArmaSpec& spec, std::size_t count) {
  if (count < 1) throw DomainError("number of cepstral coefficients must be >= 1");
  const auto f = factor_arma(spec);
  CepstralVector cv;
  cv.source = "theoretical " + spec.describe();
  cv.coefficients.assign(count, 0.0);
  cv.coefficients[0] = std::log(spec.sigma2 / (2.0 * std::numbers::pi));
  for (std::size_t ell = 1; ell < count; ++ell) {
    const int e = static_cast<int>(ell);
    double acc = 0.0;
    for (const auto& a : f.ar) acc += std::pow(a, e).real();
    for (const auto& b : f.ma) acc -= std::pow(b, e).real();
    cv.coefficients[ell] = 2.0 * acc / static_cast<double>(ell);
  }
  return cv;
}

DecayEnvelope fit_decay_envelope(const CepstralVector& cv) {
  // a_l = l |c_l| should decay like theta * delta^l; fit log a_l linearly in l.
  std::vector<std::pair<double, double>> pts;
  double amax = 0.0;
  for (std::size_t ell = 1; ell < cv.size(); ++ell) {
    amax = std::max(amax, static_cast<double>(ell) * std::abs(cv[ell]));
  }
  DecayEnvelope env;
  if (amax == 0.0) return env;
  for (std::size_t ell = 1; ell < cv.size(); ++ell) {
    const double a = static_cast<double>(ell) * std::abs(cv[ell]);
    if (a > 1e-12 * amax) pts.emplace_back(static_cast<double>(ell), std::log(a));
  }
  if (pts.size() < 2) {
    env.theta = amax;
    return env;
  }
  double lbar = 0.0, ybar = 0.0;
  for (const auto& [l, y] : pts) {
    lbar += l;
    ybar += y;
  }
  lbar /= static_cast<double>(pts.size());
  ybar /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [l, y] : pts) {
    sxy += (l - lbar) * (y - ybar);
    sxx += (l - lbar) * (l - lbar);
  }
  env.delta = std::exp(sxy / sxx);
  double log_theta = -std::numeric_limits<double>::infinity();
  for (const auto& [l, y] : pts) log_theta = std::max(log_theta, y - l * std::log(env.delta));
  env.theta = std::exp(log_theta);
  env.holds = env.delta < 1.0;
  return env;
}

bool cepstra_decay_check(const CepstralVector& cv) { return fit_decay_envelope(cv).holds; }

nlohmann::json to_json(const CepstralVector& cv) {
  return {{"source", cv.source}, {"coefficients", cv.coefficients}};
}

CepstralVector cepstral_vector_from_json(const nlohmann::json& j) {
  CepstralVector cv;
  cv.source = j.value("source", std::string{});
  cv.coefficients = j.at("coefficients").get<std::vector<double>>();
  if (cv.coefficients.empty()) throw DomainError("cepstral vector is empty");
  return cv;
}

}  // namespace robcep
