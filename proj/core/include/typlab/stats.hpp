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
#include <span>
#include <vector>

namespace typlab {

[[nodiscard]] double mean(std::span<const double> x);
/// Unbiased sample variance.
[[nodiscard]] double sample_variance(std::span<const double> x);
/// sqrt(sample_variance / n).
[[nodiscard]] double standard_error(std::span<const double> x);
/// Mean of (x - center)^2.
[[nodiscard]] double mean_square_deviation(std::span<const double> x, double center);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct BootstrapSummary {
    double estimate = 0.0;
    double std_error = 0.0;
    Interval ci95;
};

enum class BootstrapStatistic { Mean, Variance };

/// Percentile bootstrap with `resamples` draws from a stream seeded by `seed`.
[[nodiscard]] BootstrapSummary bootstrap(std::span<const double> x, BootstrapStatistic stat,
                                         int resamples, std::uint64_t seed);

/// Binomial frequency standard error sqrt(f (1 - f) / n).
[[nodiscard]] double frequency_std_error(double f, std::size_t n);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
[[nodiscard]] double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)).
[[nodiscard]] double ks_critical_value(std::size_t n, std::size_t m, double alpha);

} // namespace typlab
