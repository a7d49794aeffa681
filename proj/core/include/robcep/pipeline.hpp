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
#include <exception>
#include <functional>
#include <optional>
#include <vector>

#include "robcep/clda.hpp"
#include "robcep/core.hpp"
#include "robcep/series_io.hpp"
#include "robcep/spectral.hpp"

namespace robcep {

/// Applied in order: truncate, median/sd filter, detrend.
struct Preprocessing {
  std::optional<std::size_t> truncate_to;
  std::optional<double> median_sd_k;
  bool detrend = false;

  /// Truncate to 120 points and detrend.
  static Preprocessing gait_raw();
  /// gait_raw plus a median +- 3 sd filter before detrending.
  static Preprocessing gait_modified();
};

Series preprocess(std::span<const double> x, const Preprocessing& pre);

/// End-to-end settings: how series are cleaned, which spectral estimator is
/// used and how many cepstral coefficients are kept.
struct PipelineConfig {
  EstimatorSpec estimator;  // defaults: multitaper, R = 7, c = 1.345
  HuberConfig huber;        // IRLS limits; huber.c is overridden by estimator.huber_c
  std::size_t cepstra = 9;  // L
  Preprocessing preprocessing;
  std::uint64_t seed = 0;

  ModelConfig model_config() const { return {estimator, cepstra}; }
};

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written to index-addressed storage by the caller. If any call throws, the
/// exception from the smallest failing index is rethrown after all threads
/// finish, so error reporting does not depend on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

/// Preprocess, estimate the spectrum, and keep `count` cepstral coefficients.
CepstralVector series_cepstra(std::span<const double> x, const PipelineConfig& cfg,
                              std::size_t count);

/// Spectrum of the preprocessed series.
SpectralEstimate series_spectrum(std::span<const double> x, const PipelineConfig& cfg);

/// Cepstra for every series (labels copied through), computed in parallel.
std::vector<LabeledCepstra> compute_cepstra(const std::vector<NamedSeries>& series,
                                            const PipelineConfig& cfg, std::size_t count,
                                            unsigned jobs = 1);

std::vector<LabeledCepstra> compute_cepstra(const ReplicateSet& set, const PipelineConfig& cfg,
                                            std::size_t count, unsigned jobs = 1);

/// Leave-one-out sweep over L in [l_min, l_max]; spectra are estimated once.
LSelection select_L(const ReplicateSet& train, const PipelineConfig& cfg, std::size_t l_min,
                    std::size_t l_max, unsigned jobs = 1);

}  // namespace robcep
