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

#include <benchmark/benchmark.h>

#include <random>

#include "robcep/clda.hpp"

namespace {

std::vector<robcep::LabeledCepstra> sample(int per_pop, std::size_t dim) {
  std::mt19937_64 eng(11);
  std::normal_distribution<double> nd;
  std::vector<robcep::LabeledCepstra> out;
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= per_pop; ++k) {
      robcep::LabeledCepstra s{j, k, {}};
      for (std::size_t l = 0; l < dim; ++l) s.cepstra.coefficients.push_back(nd(eng) + 0.5 * j * (l == 1));
      out.push_back(std::move(s));
    }
  }
  return out;
}

void BM_Fit(benchmark::State& state) {
  const auto s = sample(50, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(robcep::fit(s));
}
BENCHMARK(BM_Fit)->Arg(9)->Arg(20);

void BM_LeaveOneOut(benchmark::State& state) {
  const auto s = sample(15, 9);
  for (auto _ : state) benchmark::DoNotOptimize(robcep::leave_one_out_rate(s));
}
BENCHMARK(BM_LeaveOneOut);

}  // namespace
