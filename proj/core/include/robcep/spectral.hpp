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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "robcep/core.hpp"

namespace robcep {

/// Values below this are clamped before any logarithm is taken.
inline constexpr double kSpectralFloor = 1e-300;

/// Fourier frequencies lambda_m = 2 pi m / N for m = 1..floor((N-1)/2).
/// Excludes 0 and (for even N) pi, so every grid point has a full-rank
/// cos/sin regressor pair.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::size_t n);

  std::size_t series_length() const noexcept { return n_; }
  /// Number of grid points M.
  std::size_t size() const noexcept { return (n_ - 1) / 2; }
  /// lambda_m for 1-based m.
  double frequency(std::size_t m) const noexcept;
  std::vector<double> frequencies() const;

  bool operator==(const FrequencyGrid&) const = default;

 private:
  std::size_t n_;
};

enum class EstimatorKind {
  kClassical,
  kMultitaper,
  kM,
  kMultitaperM,
};

std::string to_string(EstimatorKind kind);
/// Accepts "classical", "multitaper", "m", "multitaper-m".
EstimatorKind parse_estimator_kind(const std::string& name);

/// Which estimator produced a spectrum, with the parameters it depends on.
/// `tapers` is meaningful for the multitaper kinds, `huber_c` for the M kinds.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kMultitaper;
  int tapers = 7;
  double huber_c = 1.345;

  bool uses_tapers() const noexcept {
    return kind == EstimatorKind::kMultitaper || kind == EstimatorKind::kMultitaperM;
  }
  bool uses_huber() const noexcept {
    return kind == EstimatorKind::kM || kind == EstimatorKind::kMultitaperM;
  }
  /// e.g. "multitaper-m(R=7,c=1.345)"
  std::string describe() const;

  bool operator==(const EstimatorSpec& o) const noexcept;
};

struct SpectralEstimate {
  FrequencyGrid grid;
  std::vector<double> values;  // one per grid point, all >= kSpectralFloor
  EstimatorSpec estimator;
};

/// R orthonormal sine tapers of length N.
class TaperBank {
 public:
  TaperBank(std::size_t n, int count);

  std::size_t length() const noexcept { return n_; }
  int count() const noexcept { return count_; }
  /// Taper r (1-based), t = 1..N stored at index t-1.
  std::span<const double> taper(int r) const;

 private:
  std::size_t n_;
  int count_;
  std::vector<double> weights_;
};

TaperBank sine_tapers(std::size_t n, int count);

struct HuberConfig {
  double c = 1.345;
  int max_iterations = 100;
  double tolerance = 1e-8;

  void validate() const;
};

/// Classical periodogram (1/(2 pi N)) |sum_t x_t e^{-i lambda t}|^2 of the
/// demeaned series on the half grid.
SpectralEstimate periodogram(std::span<const double> x);

/// All N ordinates I(2 pi m / N), m = 0..N-1, of the demeaned series. Used for
/// Parseval-type checks; carries no floor clamp.
std::vector<double> periodogram_ordinates(std::span<const double> x);

/// Average of R sine-tapered periodograms. Each taper is rescaled to unit mean
/// square (sum_t h_t^2 = N), so the estimate has the same units as the
/// classical periodogram: unit white noise gives 1/(2 pi) on average.
SpectralEstimate multitaper_periodogram(std::span<const double> x, int tapers);

/// Huber influence function: u clipped to [-c, c].
double huber_psi(double u, double c);

/// Huber loss rho with rho' = psi.
double huber_rho(double u, double c);

struct HarmonicCoefficients {
  double cosine = 0.0;
  double sine = 0.0;
  int iterations = 0;
  double scale = 0.0;  // final median(|r|)/0.6745 residual scale
};

/// Robust fit of x_t ~ b_c cos(t lambda) + b_s sin(t lambda), t = 1..N, by
/// iteratively reweighted least squares on Huber weights. Residuals are
/// standardized by median(|r|)/0.6745, recomputed every iteration. Throws
/// ConvergenceError after cfg.max_iterations.
HarmonicCoefficients m_harmonic_regression(std::span<const double> x, double lambda,
                                           const HuberConfig& cfg);

/// M-periodogram (N/(8 pi)) (b_c^2 + b_s^2) at every grid frequency. The
/// series is first centered by a Huber M-estimate of location with the same
/// c (the sample mean in the c -> infinity limit). Per-frequency failures
/// are collected and reported together in one ConvergenceError.
SpectralEstimate m_periodogram(std::span<const double> x, const HuberConfig& cfg);

/// Average over r of M-periodograms of the tapered series h_r x, with the
/// same unit-mean-square taper scaling as multitaper_periodogram.
SpectralEstimate multitaper_m_periodogram(std::span<const double> x, int tapers,
                                          const HuberConfig& cfg);

/// Dispatches on spec.kind. `cfg` supplies IRLS limits; spec.huber_c wins
/// over cfg.c.
SpectralEstimate estimate_spectrum(std::span<const double> x, const EstimatorSpec& spec,
                                   const HuberConfig& cfg = {});

}  // namespace robcep
