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
#include <span>
#include <vector>

namespace robcep {

using Series = std::vector<double>;

/// Shortest series for which a nonempty Fourier grid exists with room for
/// a few taper sequences.
inline constexpr std::size_t kMinSeriesLength = 8;

/// One observed series of population `population`, replicate `index`.
/// Both labels are 1-based.
struct Replicate {
  Replicate(Series values, int population, int index);

  Series values;
  int population;
  int index;

  std::size_t length() const noexcept { return values.size(); }
};

/// A labeled collection of equal-length replicates drawn from J populations
/// labeled 1..J, every population nonempty.
class ReplicateSet {
 public:
  explicit ReplicateSet(std::vector<Replicate> replicates);

  const std::vector<Replicate>& replicates() const noexcept { return replicates_; }
  std::size_t size() const noexcept { return replicates_.size(); }
  /// Common series length N.
  std::size_t length() const noexcept { return length_; }
  int num_populations() const noexcept { return static_cast<int>(counts_.size()); }
  /// n_j for j = 1..J (stored at index j-1).
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  /// f_j = n_j / n.
  std::vector<double> priors() const;

 private:
  std::vector<Replicate> replicates_;
  std::vector<std::size_t> counts_;
  std::size_t length_ = 0;
};

/// Additive-outlier contamination: each point independently shifted by +omega
/// or -omega with probability p/2 each.
struct ContaminationConfig {
  double probability = 0.01;
  double magnitude = 7.0;
  std::uint64_t seed = 0;

  void validate() const;
};

double mean(std::span<const double> x);

/// Median of x (mean of the two central order statistics for even sizes).
/// Throws DomainError on empty input.
double median(std::span<const double> x);

/// Biased (1/N) sample variance about the sample mean.
double variance(std::span<const double> x);

/// (1/N) sum_{t} (x_t - xbar)(x_{t+|lag|} - xbar). Throws DomainError when
/// |lag| >= N.
double sample_autocovariance(std::span<const double> x, long lag);

/// Residuals of the least-squares fit of x on (1, t).
Series detrend(std::span<const double> x);

/// Points farther than k sample standard deviations from the sample median
/// are replaced by the median.
Series median_sd_filter(std::span<const double> x, double k);

/// Number of points median_sd_filter(x, k) would replace.
std::size_t count_median_sd_outliers(std::span<const double> x, double k);

/// Z_t = X_t + omega * I_t with I_t in {-1, 0, 1}; deterministic given cfg.seed.
Series contaminate(std::span<const double> x, const ContaminationConfig& cfg);

/// Keeps the first n points. Throws DomainError when x is shorter than n.
Series truncate(std::span<const double> x, std::size_t n);

}  // namespace robcep
