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

#include "robcep/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "robcep/error.hpp"
#include "robcep/rng.hpp"

namespace robcep {

Replicate::Replicate(Series v, int pop, int idx)
    : values(std::move(v)), population(pop), index(idx) {
  if (values.size() < kMinSeriesLength) {
    throw DomainError("replicate (" + std::to_string(pop) + "," + std::to_string(idx) +
                      ") has length " + std::to_string(values.size()) +
                      ", need at least " + std::to_string(kMinSeriesLength));
  }
  if (population < 1 || index < 1) {
    throw DomainError("replicate labels must be positive, got population " +
                      std::to_string(pop) + " index " + std::to_string(idx));
  }
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw DomainError("replicate (" + std::to_string(pop) + "," + std::to_string(idx) +
                        ") contains a non-finite value");
    }
  }
}

ReplicateSet::ReplicateSet(std::vector<Replicate> replicates)
    : replicates_(std::move(replicates)) {
  if (replicates_.empty()) throw InsufficientDataError("empty replicate set");
  length_ = replicates_.front().length();
  int max_label = 0;
  for (const auto& r : replicates_) {
    if (r.length() != length_) {
      throw DomainError("replicate (" + std::to_string(r.population) + "," +
                        std::to_string(r.index) + ") has length " +
                        std::to_string(r.length()) + ", expected common length " +
                        std::to_string(length_));
    }
    max_label = std::max(max_label, r.population);
  }
  counts_.assign(static_cast<std::size_t>(max_label), 0);
  for (const auto& r : replicates_) ++counts_[static_cast<std::size_t>(r.population - 1)];
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] == 0) {
      throw DomainError("population " + std::to_string(j + 1) +
                        " has no replicates; labels must cover 1..J");
    }
  }
}

std::vector<double> ReplicateSet::priors() const {
  std::vector<double> f(counts_.size());
  const double n = static_cast<double>(replicates_.size());
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = static_cast<double>(counts_[j]) / n;
  return f;
}

void ContaminationConfig::validate() const {
  if (!(probability > 0.0 && probability < 1.0)) {
    throw DomainError("contamination probability must lie in (0,1)");
  }
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw DomainError("contamination magnitude must be finite and >= 0");
  }
}

double mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean of empty sequence");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double median(std::span<const double> x) {
  if (x.empty()) throw DomainError("median of empty sequence");
  std::vector<double> v(x.begin(), x.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

double variance(std::span<const double> x) {
  return sample_autocovariance(x, 0);
}

double sample_autocovariance(std::span<const double> x, long lag) {
  const std::size_t n = x.size();
  const std::size_t h = static_cast<std::size_t>(std::labs(lag));
  if (n == 0 || h >= n) {
    throw DomainError("autocovariance lag " + std::to_string(lag) +
                      " out of range for length " + std::to_string(n));
  }
  const double xbar = mean(x);
  double acc = 0.0;
  for (std::size_t t = 0; t + h < n; ++t) acc += (x[t] - xbar) * (x[t + h] - xbar);
  return acc / static_cast<double>(n);
}

Series detrend(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("detrend needs at least 2 points");
  // Center the time index so the normal equations decouple.
  const double tbar = 0.5 * static_cast<double>(n - 1);
  const double xbar = mean(x);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dt = static_cast<double>(t) - tbar;
    sxy += dt * (x[t] - xbar);
    sxx += dt * dt;
  }
  const double slope = sxy / sxx;
  Series out(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = (x[t] - xbar) - slope * (static_cast<double>(t) - tbar);
  }
  return out;
}

namespace {

struct MedianSd {
  double center;
  double radius;
};

MedianSd median_sd(std::span<const double> x, double k) {
  if (!(k > 0.0)) throw DomainError("median_sd_filter multiplier must be positive");
  if (x.size() < 2) return {x.empty() ? 0.0 : x[0], 0.0};
  const double xbar = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - xbar) * (v - xbar);
  const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  return {median(x), k * sd};
}

}  // namespace

Series median_sd_filter(std::span<const double> x, double k) {
  const auto [center, radius] = median_sd(x, k);
  Series out(x.begin(), x.end());
  for (double& v : out) {
    if (std::abs(v - center) > radius) v = center;
  }
  return out;
}

std::size_t count_median_sd_outliers(std::span<const double> x, double k) {
  const auto [center, radius] = median_sd(x, k);
  return static_cast<std::size_t>(std::count_if(
      x.begin(), x.end(), [&](double v) { return std::abs(v - center) > radius; }));
}

Series contaminate(std::span<const double> x, const ContaminationConfig& cfg) {
  cfg.validate();
  Series out(x.begin(), x.end());
  if (cfg.magnitude == 0.0) return out;
  Engine eng = make_engine(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double half = 0.5 * cfg.probability;
  for (double& v : out) {
    const double u = unif(eng);
    if (u < half) {
      v += cfg.magnitude;
    } else if (u < cfg.probability) {
      v -= cfg.magnitude;
    }
  }
  return out;
}

Series truncate(std::span<const double> x, std::size_t n) {
  if (x.size() < n) {
    throw DomainError("cannot truncate series of length " + std::to_string(x.size()) +
                      " to " + std::to_string(n));
  }
  return Series(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace robcep
