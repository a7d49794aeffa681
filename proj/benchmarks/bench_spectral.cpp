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

#include "robcep/cepstral.hpp"
#include "robcep/spectral.hpp"

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 eng(7);
  std::normal_distribution<double> nd;
  std::vector<double> x(n);
  for (double& v : x) v = nd(eng);
  return x;
}

void BM_Periodogram(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(robcep::periodogram(x));
}
BENCHMARK(BM_Periodogram)->Arg(250)->Arg(1000)->Arg(2000);

void BM_Multitaper(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(robcep::multitaper_periodogram(x, 7));
}
BENCHMARK(BM_Multitaper)->Arg(250)->Arg(1000)->Arg(2000);

void BM_MPeriodogram(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(robcep::m_periodogram(x, {}));
}
BENCHMARK(BM_MPeriodogram)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MultitaperM(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(robcep::multitaper_m_periodogram(x, 7, {}));
}
BENCHMARK(BM_MultitaperM)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Cepstra(benchmark::State& state) {
  const auto est = robcep::multitaper_periodogram(noise(1000), 7);
  for (auto _ : state) benchmark::DoNotOptimize(robcep::estimate_cepstra(est, 20));
}
BENCHMARK(BM_Cepstra);

}  // namespace
