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

#include "robcep/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "robcep/error.hpp"

namespace robcep {

Preprocessing Preprocessing::gait_raw() {
  Preprocessing p;
  p.truncate_to = 120;
  p.detrend = true;
  return p;
}

Preprocessing Preprocessing::gait_modified() {
  Preprocessing p = gait_raw();
  p.median_sd_k = 3.0;
  return p;
}

Series preprocess(std::span<const double> x, const Preprocessing& pre) {
  Series y(x.begin(), x.end());
  if (pre.truncate_to) y = truncate(y, *pre.truncate_to);
  if (pre.median_sd_k) y = median_sd_filter(y, *pre.median_sd_k);
  if (pre.detrend) y = detrend(y);
  return y;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

SpectralEstimate series_spectrum(std::span<const double> x, const PipelineConfig& cfg) {
  const Series y = preprocess(x, cfg.preprocessing);
  return estimate_spectrum(y, cfg.estimator, cfg.huber);
}

CepstralVector series_cepstra(std::span<const double> x, const PipelineConfig& cfg,
                              std::size_t count) {
  return estimate_cepstra(series_spectrum(x, cfg), count);
}

std::vector<LabeledCepstra> compute_cepstra(const std::vector<NamedSeries>& series,
                                            const PipelineConfig& cfg, std::size_t count,
                                            unsigned jobs) {
  std::vector<LabeledCepstra> out(series.size());
  parallel_for(series.size(), jobs, [&](std::size_t i) {
    out[i] = LabeledCepstra{series[i].population, series[i].replicate,
                            series_cepstra(series[i].values, cfg, count)};
  });
  return out;
}

std::vector<LabeledCepstra> compute_cepstra(const ReplicateSet& set, const PipelineConfig& cfg,
                                            std::size_t count, unsigned jobs) {
  return compute_cepstra(from_replicate_set(set), cfg, count, jobs);
}

LSelection select_L(const ReplicateSet& train, const PipelineConfig& cfg, std::size_t l_min,
                    std::size_t l_max, unsigned jobs) {
  if (l_min < 1 || l_max < l_min) throw DomainError("empty L range");
  const auto full = compute_cepstra(train, cfg, l_max, jobs);
  return select_L_from_cepstra(full, l_min, l_max, cfg.model_config());
}

}  // namespace robcep
