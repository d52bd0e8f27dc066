// Copyright 2026 The typlab Authors
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

#include "typlab/linalg.hpp"

namespace typlab {

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the stream for (seed, trial). Streams for different trials are
/// seeded from well separated splitmix64 outputs.
[[nodiscard]] std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial);

/// Trial indices at or above this value are reserved for per-experiment setup
/// draws (fixed Hamiltonians, observables) shared by all trials.
inline constexpr std::uint64_t kSetupStreamBase = 0xFFFF'FFFF'0000'0000ULL;

/// Per-trial random stream: std::mt19937_64 seeded by stream_seed.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t trial);
    static RngStream setup(std::uint64_t seed, std::uint64_t slot) {
        return {seed, kSetupStreamBase + slot};
    }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
    /// Real and imaginary parts independent N(0, sigma^2).
    Complex complex_normal(double sigma = 1.0) {
        const double re = normal();
        const double im = normal();
        return {sigma * re, sigma * im};
    }
    ComplexVector complex_normal_vector(Index n);
    ComplexMatrix ginibre(Index rows, Index cols);

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace typlab
