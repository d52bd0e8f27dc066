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

#include "typlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "typlab/rng.hpp"

namespace typlab {

double mean(std::span<const double> x) {
    if (x.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (const double v : x) {
        s += v;
    }
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) {
        return 0.0;
    }
    const double m = mean(x);
    double s = 0.0;
    for (const double v : x) {
        s += (v - m) * (v - m);
    }
    return s / static_cast<double>(x.size() - 1);
}

double standard_error(std::span<const double> x) {
    return x.empty() ? 0.0 : std::sqrt(sample_variance(x) / static_cast<double>(x.size()));
}

double mean_square_deviation(std::span<const double> x, double center) {
    if (x.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (const double v : x) {
        s += (v - center) * (v - center);
    }
    return s / static_cast<double>(x.size());
}

namespace {

double evaluate(std::span<const double> x, BootstrapStatistic stat) {
    return stat == BootstrapStatistic::Mean ? mean(x) : sample_variance(x);
}

} // namespace

BootstrapSummary bootstrap(std::span<const double> x, BootstrapStatistic stat, int resamples,
                           std::uint64_t seed) {
    BootstrapSummary out;
    out.estimate = evaluate(x, stat);
    if (x.size() < 2 || resamples < 2) {
        out.ci95 = {out.estimate, out.estimate};
        return out;
    }
    std::mt19937_64 engine(splitmix64(seed));
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    std::vector<double> buf(x.size());
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    for (auto &s : stats) {
        for (auto &b : buf) {
            b = x[pick(engine)];
        }
        s = evaluate(buf, stat);
    }
    out.std_error = std::sqrt(sample_variance(stats));
    std::sort(stats.begin(), stats.end());
    const auto at = [&](double q) {
        const double pos = q * static_cast<double>(stats.size() - 1);
        const auto i = static_cast<std::size_t>(std::floor(pos));
        const std::size_t j = std::min(i + 1, stats.size() - 1);
        return stats[i] + (pos - static_cast<double>(i)) * (stats[j] - stats[i]);
    };
    out.ci95 = {at(0.025), at(0.975)};
    return out;
}

double frequency_std_error(double f, std::size_t n) {
    return n == 0 ? 0.0 : std::sqrt(std::max(0.0, f * (1.0 - f)) / static_cast<double>(n));
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_statistic: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace typlab
