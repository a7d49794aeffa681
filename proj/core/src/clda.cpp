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

#include "robcep/clda.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robcep/error.hpp"

namespace robcep {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(const CepstralVector& cv) {
  return {cv.coefficients.data(), static_cast<Eigen::Index>(cv.coefficients.size())};
}

int max_label(const std::vector<LabeledCepstra>& sample) {
  int j = 0;
  for (const auto& s : sample) {
    if (s.population < 1) {
      throw DomainError("population labels must be >= 1, got " + std::to_string(s.population));
    }
    j = std::max(j, s.population);
  }
  return j;
}

}  // namespace

MomentSummary compute_moments(const std::vector<LabeledCepstra>& sample, double ridge) {
  if (sample.empty()) throw InsufficientDataError("no cepstral vectors to summarize");
  const std::size_t dim = sample.front().cepstra.size();
  if (dim == 0) throw DomainError("cepstral vectors are empty");
  const int num_pop = max_label(sample);
  const auto npop = static_cast<std::size_t>(num_pop);
  const auto d = static_cast<Eigen::Index>(dim);

  MomentSummary out;
  out.counts.assign(npop, 0);
  out.within_means = Eigen::MatrixXd::Zero(num_pop, d);
  for (const auto& s : sample) {
    if (s.cepstra.size() != dim) {
      throw DomainError("cepstral vectors differ in length (" + std::to_string(dim) + " vs " +
                        std::to_string(s.cepstra.size()) + ")");
    }
    for (double v : s.cepstra.coefficients) {
      if (!std::isfinite(v)) throw DomainError("cepstral vector contains a non-finite value");
    }
    ++out.counts[static_cast<std::size_t>(s.population - 1)];
    out.within_means.row(s.population - 1) += as_vector(s.cepstra).transpose();
  }
  for (std::size_t j = 0; j < npop; ++j) {
    if (out.counts[j] < 2) {
      throw InsufficientDataError("population " + std::to_string(j + 1) + " has " +
                                  std::to_string(out.counts[j]) +
                                  " replicates; at least 2 are required");
    }
    out.within_means.row(static_cast<Eigen::Index>(j)) /= static_cast<double>(out.counts[j]);
  }

  const double n = static_cast<double>(sample.size());
  out.priors.resize(npop);
  out.overall_mean = Eigen::VectorXd::Zero(d);
  for (std::size_t j = 0; j < npop; ++j) {
    out.priors[j] = static_cast<double>(out.counts[j]) / n;
    out.overall_mean += out.priors[j] * out.within_means.row(static_cast<Eigen::Index>(j)).transpose();
  }

  out.between = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t j = 0; j < npop; ++j) {
    const Eigen::VectorXd diff =
        out.within_means.row(static_cast<Eigen::Index>(j)).transpose() - out.overall_mean;
    out.between.noalias() += out.priors[j] * diff * diff.transpose();
  }

  // sum_j f_j (1/n_j) sum_k (.)(.)^T collapses to (1/n) over all replicates.
  out.within = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : sample) {
    const Eigen::VectorXd diff =
        as_vector(s.cepstra) - out.within_means.row(s.population - 1).transpose();
    out.within.noalias() += diff * diff.transpose();
  }
  out.within /= n;
  out.within = 0.5 * (out.within + out.within.transpose()).eval();
  out.between = 0.5 * (out.between + out.between.transpose()).eval();

  const double trace = out.within.trace();
  out.ridge = ridge * (trace > 0.0 ? trace / static_cast<double>(dim) : 1.0);
  out.within.diagonal().array() += out.ridge;
  return out;
}

DiscriminantModel fit(const MomentSummary& moments, ModelConfig config) {
  const Eigen::Index d = moments.within.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(moments.within);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("within-population scatter is not positive definite");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  // A = L^{-1} B L^{-T}
  Eigen::MatrixXd a = lower.triangularView<Eigen::Lower>().solve(moments.between);
  a = lower.triangularView<Eigen::Lower>().solve(a.transpose()).transpose();
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    throw ConditioningError("eigen-decomposition of whitened between scatter failed");
  }
  const Eigen::VectorXd& evals = es.eigenvalues();  // ascending
  const double top = evals.size() > 0 ? evals(evals.size() - 1) : 0.0;
  Eigen::Index rank = 0;
  if (top > 0.0) {
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
      if (evals(i) > 1e-10 * top) ++rank;
    }
  }
  const Eigen::Index q =
      std::min<Eigen::Index>({static_cast<Eigen::Index>(moments.num_populations() - 1), rank, d});

  DiscriminantModel model;
  model.priors = moments.priors;
  model.config = config;
  model.config.cepstra = static_cast<std::size_t>(d);
  model.projections.resize(q, d);
  model.eigenvalues.resize(q);
  for (Eigen::Index s = 0; s < q; ++s) {
    const Eigen::Index col = evals.size() - 1 - s;
    Eigen::VectorXd p =
        lower.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors().col(col));
    Eigen::Index imax = 0;
    p.cwiseAbs().maxCoeff(&imax);
    if (p(imax) < 0.0) p = -p;
    model.projections.row(s) = p.transpose();
    model.eigenvalues(s) = evals(col);
  }
  model.centroids = moments.within_means * model.projections.transpose();
  return model;
}

DiscriminantModel fit(const std::vector<LabeledCepstra>& sample, ModelConfig config) {
  return fit(compute_moments(sample), config);
}

Eigen::VectorXd project(const DiscriminantModel& model, const CepstralVector& cv) {
  if (cv.size() != model.dimension()) {
    throw DomainError("cepstral vector has " + std::to_string(cv.size()) +
                      " coefficients but the model expects " +
                      std::to_string(model.dimension()));
  }
  return model.projections * as_vector(cv);
}

int classify(const DiscriminantModel& model, const Eigen::VectorXd& coords) {
  if (static_cast<std::size_t>(coords.size()) != model.num_discriminants()) {
    throw DomainError("coordinate vector length does not match the model");
  }
  int best = 1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= model.num_populations(); ++j) {
    const double dist = (coords.transpose() - model.centroids.row(j - 1)).squaredNorm();
    const double score = dist - 2.0 * std::log(model.priors[static_cast<std::size_t>(j - 1)]);
    if (score < best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

double ConfusionMatrix::overall_rate() const {
  std::size_t total = 0;
  double correct = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    total += counts[j];
    correct += proportions(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) *
               static_cast<double>(counts[j]);
  }
  return total ? correct / static_cast<double>(total) : 0.0;
}

ConfusionMatrix confusion_from_labels(int num_populations, const std::vector<int>& truth,
                                      const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) {
    throw DomainError("truth and prediction vectors differ in length");
  }
  ConfusionMatrix cm;
  const auto npop = static_cast<std::size_t>(num_populations);
  cm.counts.assign(npop, 0);
  Eigen::MatrixXd tally = Eigen::MatrixXd::Zero(num_populations, num_populations);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i];
    const int p = predicted[i];
    if (t < 1 || t > num_populations || p < 1 || p > num_populations) {
      throw DomainError("label outside 1.." + std::to_string(num_populations));
    }
    ++cm.counts[static_cast<std::size_t>(t - 1)];
    tally(p - 1, t - 1) += 1.0;
  }
  for (std::size_t j = 0; j < npop; ++j) {
    if (cm.counts[j] == 0) {
      throw DomainError("population " + std::to_string(j + 1) + " has no test items");
    }
    tally.col(static_cast<Eigen::Index>(j)) /= static_cast<double>(cm.counts[j]);
  }
  cm.proportions = std::move(tally);
  return cm;
}

ConfusionMatrix evaluate(const DiscriminantModel& model,
                         const std::vector<LabeledCepstra>& test) {
  std::vector<int> truth;
  std::vector<int> pred;
  truth.reserve(test.size());
  pred.reserve(test.size());
  for (const auto& s : test) {
    truth.push_back(s.population);
    pred.push_back(predict(model, s.cepstra));
  }
  return confusion_from_labels(model.num_populations(), truth, pred);
}

std::vector<int> leave_one_out_predictions(const std::vector<LabeledCepstra>& sample,
                                           ModelConfig config) {
  std::vector<int> pred(sample.size());
  std::vector<LabeledCepstra> rest;
  rest.reserve(sample.size());
  const int num_pop = max_label(sample);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    rest.clear();
    for (std::size_t k = 0; k < sample.size(); ++k) {
      if (k != i) rest.push_back(sample[k]);
    }
    if (max_label(rest) != num_pop) {
      throw InsufficientDataError("leave-one-out removes population " +
                                  std::to_string(sample[i].population) + " entirely");
    }
    const auto model = fit(rest, config);
    pred[i] = predict(model, sample[i].cepstra);
  }
  return pred;
}

double leave_one_out_rate(const std::vector<LabeledCepstra>& sample, ModelConfig config) {
  const auto pred = leave_one_out_predictions(sample, config);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (pred[i] == sample[i].population) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(sample.size());
}

std::vector<LabeledCepstra> truncate_cepstra(const std::vector<LabeledCepstra>& sample,
                                             std::size_t count) {
  std::vector<LabeledCepstra> out;
  out.reserve(sample.size());
  for (const auto& s : sample) {
    if (s.cepstra.size() < count) {
      throw DomainError("cannot truncate " + std::to_string(s.cepstra.size()) +
                        " cepstral coefficients to " + std::to_string(count));
    }
    LabeledCepstra t{s.population, s.replicate, {}};
    t.cepstra.source = s.cepstra.source;
    t.cepstra.coefficients.assign(s.cepstra.coefficients.begin(),
                                  s.cepstra.coefficients.begin() +
                                      static_cast<std::ptrdiff_t>(count));
    out.push_back(std::move(t));
  }
  return out;
}

LSelection select_L_from_cepstra(const std::vector<LabeledCepstra>& sample, std::size_t l_min,
                                 std::size_t l_max, ModelConfig config) {
  if (l_min < 1 || l_max < l_min) throw DomainError("empty L range");
  LSelection sel;
  double best_rate = -1.0;
  for (std::size_t l = l_min; l <= l_max; ++l) {
    config.cepstra = l;
    const double rate = leave_one_out_rate(truncate_cepstra(sample, l), config);
    sel.table.emplace_back(l, rate);
    if (rate > best_rate) {
      best_rate = rate;
      sel.best = l;
    }
  }
  return sel;
}

}  // namespace robcep
