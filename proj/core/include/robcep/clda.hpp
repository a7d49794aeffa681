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
#include <vector>

#include <Eigen/Dense>

#include "robcep/cepstral.hpp"
#include "robcep/spectral.hpp"

namespace robcep {

/// Relative ridge added to the pooled within-population scatter:
/// Omega_W += kWithinRidge * trace(Omega_W)/L * I.
inline constexpr double kWithinRidge = 1e-8;

struct LabeledCepstra {
  int population = 0;  // 1..J
  int replicate = 0;
  CepstralVector cepstra;
};

/// Centroids and scatter matrices of a labeled cepstral sample.
struct MomentSummary {
  Eigen::MatrixXd within_means;  // J x L, row j-1 is mu_j
  Eigen::VectorXd overall_mean;  // sum_j f_j mu_j
  Eigen::MatrixXd between;       // sum_j f_j (mu_j - mu)(mu_j - mu)^T
  Eigen::MatrixXd within;        // pooled, prior-weighted, ridge-regularized
  std::vector<double> priors;
  std::vector<std::size_t> counts;
  double ridge = 0.0;  // absolute amount added to the diagonal of `within`

  int num_populations() const noexcept { return static_cast<int>(priors.size()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(overall_mean.size()); }
};

/// Requires n_j >= 2 for every population 1..J and a common length L.
MomentSummary compute_moments(const std::vector<LabeledCepstra>& sample,
                              double ridge = kWithinRidge);

/// What produced the cepstra a model was trained on.
struct ModelConfig {
  EstimatorSpec estimator;
  std::size_t cepstra = 9;  // L
};

struct DiscriminantModel {
  Eigen::MatrixXd projections;  // q x L, row s-1 is p_s
  Eigen::VectorXd eigenvalues;  // q, descending
  Eigen::MatrixXd centroids;    // J x q, projected population centroids
  std::vector<double> priors;
  ModelConfig config;

  int num_populations() const noexcept { return static_cast<int>(priors.size()); }
  std::size_t num_discriminants() const noexcept {
    return static_cast<std::size_t>(projections.rows());
  }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(projections.cols()); }
};

/// Solves Omega_B p = lambda Omega_W p by whitening with the Cholesky factor of
/// Omega_W. Keeps q = min(J-1, rank Omega_B, L) directions, each scaled so that
/// p' Omega_W p = 1 and signed so its largest-magnitude entry is positive.
DiscriminantModel fit(const MomentSummary& moments, ModelConfig config = {});

/// Convenience: compute_moments followed by fit.
DiscriminantModel fit(const std::vector<LabeledCepstra>& sample, ModelConfig config = {});

/// Discriminant coordinates d_s = <p_s, c>.
Eigen::VectorXd project(const DiscriminantModel& model, const CepstralVector& cv);

/// argmin_j sum_s (d_s - mu_js)^2 - 2 ln f_j, ties to the smallest label.
int classify(const DiscriminantModel& model, const Eigen::VectorXd& coords);

inline int predict(const DiscriminantModel& model, const CepstralVector& cv) {
  return classify(model, project(model, cv));
}

/// Column-normalized confusion matrix: entry (i, j) is the proportion of
/// true-population-j items predicted as i.
struct ConfusionMatrix {
  Eigen::MatrixXd proportions;      // J x J
  std::vector<std::size_t> counts;  // test items per true population

  int num_populations() const noexcept { return static_cast<int>(counts.size()); }
  /// sum_j f_j^test rho_jj
  double overall_rate() const;
  /// rho_jj for 1-based j.
  double diagonal(int j) const { return proportions(j - 1, j - 1); }
};

/// Builds the matrix from parallel label vectors (labels 1..J). Every
/// population must appear at least once in `truth`.
ConfusionMatrix confusion_from_labels(int num_populations, const std::vector<int>& truth,
                                      const std::vector<int>& predicted);

ConfusionMatrix evaluate(const DiscriminantModel& model,
                         const std::vector<LabeledCepstra>& test);

/// Fraction of replicates correctly classified when each is held out in turn
/// and the model is refit on the rest. Every population needs n_j >= 3.
double leave_one_out_rate(const std::vector<LabeledCepstra>& sample, ModelConfig config = {});

/// Labels predicted under leave-one-out, in sample order.
std::vector<int> leave_one_out_predictions(const std::vector<LabeledCepstra>& sample,
                                           ModelConfig config = {});

struct LSelection {
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, double>> table;  // (L, LOO rate)
};

/// Scores every L in [l_min, l_max] by leave-one-out on the first L
/// coefficients of `sample` (which must carry at least l_max). Returns the
/// smallest L attaining the maximum rate.
LSelection select_L_from_cepstra(const std::vector<LabeledCepstra>& sample, std::size_t l_min,
                                 std::size_t l_max, ModelConfig config = {});

/// First `count` coefficients of every vector.
std::vector<LabeledCepstra> truncate_cepstra(const std::vector<LabeledCepstra>& sample,
                                             std::size_t count);

}  // namespace robcep
