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

#include <cstdint>
#include <random>

namespace robcep {

/// Engine used for every stochastic routine in the library.
using Engine = std::mt19937_64;

/// What a random stream is used for. Part of the stream key so that, e.g.,
/// the innovations of replicate (j, k) never share draws with its
/// contamination pattern.
enum class StreamPurpose : std::uint64_t {
  kParameters = 1,
  kInnovations = 2,
  kContamination = 3,
  kTestParameters = 4,
  kTestInnovations = 5,
  kTestContamination = 6,
  kRepetition = 7,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent 64-bit seed from a parent seed and a
/// (population, replicate, purpose) key. Pure function: the same key always
/// maps to the same stream, independent of call order or thread.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t population,
                          std::uint64_t replicate, StreamPurpose purpose) noexcept;

inline Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

}  // namespace robcep
